#pragma once
#include <json.hpp>

#include "dertower/tower.hpp"

namespace dertower {

using Json = nlohmann::json;

// Every CLI record carries the same envelope; `result` holds the payload.
Json record_envelope(const std::string& command, int n, int d, Json params);

Json json_lie(const LyndonTable& T, const LieElt& a);
Json json_deriv(const LyndonTable& T, const Derivation& D);
Json json_witness(LyndonTable& T, const SparseVec& v, int degree);

Json json_basis(LyndonTable& T, int n, int m);
Json json_hscan(LyndonTable& T, const HScanResult& r, bool with_timings);
Json json_property_t(const TReport& r);
Json json_center(const CenterReport& r);
Json json_chain(const IdealChain& c);
Json json_pqr(const PQR& v);
Json json_tower(LyndonTable& T, const TowerReport& r, bool with_timings);
Json json_invariants(LyndonTable& T, int d, int m, const Subspace& inv, bool glz);
Json json_ugen(int m, long full_dim, long comm_rank, std::size_t count);

}  // namespace dertower
