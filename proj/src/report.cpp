#include "dertower/report.hpp"

namespace dertower {

Json record_envelope(const std::string& command, int n, int d, Json params) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["n"] = n;
  j["d"] = d;
  j["params"] = std::move(params);
  return j;
}

Json json_lie(const LyndonTable& T, const LieElt& a) {
  // (word, numerator, denominator) triples sorted by word
  Json terms = Json::array();
  for (const auto& [g, c] : a.t) {
    Json t;
    t["word"] = T.word(g);
    t["num"] = rat_str(Rat(c.get_num()));
    t["den"] = rat_str(Rat(c.get_den()));
    terms.push_back(std::move(t));
  }
  return terms;
}

Json json_deriv(const LyndonTable& T, const Derivation& D) {
  Json j;
  j["n"] = D.n;
  if (!D.gl.empty()) {
    Json rows = Json::array();
    for (const auto& row : D.gl) {
      Json r = Json::array();
      for (const auto& c : row) r.push_back(rat_str(c));
      rows.push_back(std::move(r));
    }
    j["gl"] = std::move(rows);
  }
  Json parts = Json::object();
  for (const auto& [k, images] : D.parts) {
    Json imgs = Json::array();
    for (const auto& img : images) imgs.push_back(json_lie(T, img));
    parts[std::to_string(k)] = std::move(imgs);
  }
  j["parts"] = std::move(parts);
  return j;
}

Json json_witness(LyndonTable& T, const SparseVec& v, int degree) {
  Json j;
  j["degree"] = degree;
  j["derivation"] = json_deriv(T, devectorize(T, v, degree));
  return j;
}

Json json_basis(LyndonTable& T, int n, int m) {
  Json j;
  j["witt_dim"] = witt_dim(n, m).get_str();
  Json words = Json::array();
  for (int r = 0; r < T.count(m); ++r) words.push_back(word_str(T.word(T.gid(m, r))));
  j["words"] = std::move(words);
  return j;
}

Json json_hscan(LyndonTable& T, const HScanResult& r, bool with_timings) {
  Json j;
  j["scanned_max"] = r.scanned_max;
  j["requested_max"] = r.requested_max;
  j["found_degree"] = r.found_degree ? Json(*r.found_degree) : Json(nullptr);
  j["certified_h_lower_bound"] = r.certified_h_lower();
  j["budget_exceeded"] = r.budget_exceeded;
  if (r.budget_exceeded) j["budget_reason"] = r.budget_reason;
  Json trace = Json::array();
  for (const auto& row : r.trace) {
    Json t;
    t["degree"] = row.m;
    t["ambient_dim"] = row.ambient_dim;
    t["invariant_rank"] = row.invariant_rank;
    t["found"] = row.found;
    if (with_timings) t["seconds"] = row.seconds;
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  if (r.witness && r.found_degree) j["witness"] = json_witness(T, *r.witness, *r.found_degree);
  return j;
}

Json json_property_t(const TReport& r) {
  Json j;
  j["verdict"] = verdict_str(r.verdict);
  j["reason"] = r.reason;
  j["scanned_range"] = {2, r.scanned_max};
  if (r.found_degree) j["found_degree"] = *r.found_degree;
  return j;
}

Json json_center(const CenterReport& r) {
  Json j;
  j["nontrivial"] = r.nontrivial;
  j["criterion"] = "2n | d-1";
  j["computed_check"] = r.computed_check;
  if (r.computed_check) j["invariant_rank"] = r.invariant_rank;
  return j;
}

Json json_chain(const IdealChain& c) {
  Json j;
  j["variant"] = c.variant == ChainVariant::Sl ? "sl" : "gl_z";
  j["stabilization_index"] = c.stabilization_index;
  Json members = Json::array();
  for (const auto& fam : c.members) {
    Json m;
    m["name"] = fam.name;
    Json ranks = Json::object();
    for (const auto& [k, S] : fam.by_degree) ranks[std::to_string(k)] = S.rank();
    m["ranks"] = std::move(ranks);
    members.push_back(std::move(m));
  }
  j["members"] = std::move(members);
  Json zr = Json::object(), pr = Json::object(), ir = Json::object();
  for (const auto& [k, S] : c.zero_part.by_degree) zr[std::to_string(k)] = S.rank();
  for (const auto& [k, S] : c.plus_part.by_degree) pr[std::to_string(k)] = S.rank();
  for (const auto& [k, S] : c.ul_infinity.by_degree) ir[std::to_string(k)] = S.rank();
  j["trivial_part_ranks"] = std::move(zr);
  j["plus_part_ranks"] = std::move(pr);
  j["ul_infinity_ranks"] = std::move(ir);
  Json cs = Json::array();
  for (const auto& S : c.center_slices) cs.push_back(S.rank());
  j["center_slice_ranks"] = std::move(cs);
  return j;
}

Json json_pqr(const PQR& v) {
  Json j;
  j["p"] = v.p;
  j["q"] = v.q;
  j["r"] = v.r;
  return j;
}

Json json_tower(LyndonTable& T, const TowerReport& r, bool with_timings) {
  Json j;
  j["case"] = tower_case_str(r.case_tag);
  j["center_nontrivial"] = r.center_nontrivial;
  j["height_bound_rational"] = rat_str(r.bound_rational);
  j["height_bound"] = r.bound_floor;
  j["h_lower_bound"] = r.h_lower;
  j["h_exact"] = r.h_exact;
  j["h_scan"] = json_hscan(T, r.h_info, with_timings);
  if (r.pqr_data) j["pqr"] = json_pqr(*r.pqr_data);
  if (r.cgamma) {
    Json cg;
    cg["case_id"] = r.cgamma->case_id;
    cg["condition"] = r.cgamma->condition;
    cg["stages"] = r.cgamma->stages;
    cg["stabilize_step"] = r.cgamma->stabilize_step;
    cg["note"] = r.cgamma->note;
    j["cgamma"] = std::move(cg);
  }
  j["caveats"] = r.caveats;
  return j;
}

Json json_invariants(LyndonTable& T, int d, int m, const Subspace& inv, bool glz) {
  Json j;
  j["degree"] = m;
  j["ambient_dim"] = inv.ambient;
  j["rank"] = inv.rank();
  j["variant"] = glz ? "gl_z" : "sl";
  Json basis = Json::array();
  for (const auto& r : inv.rows) basis.push_back(json_witness(T, r, m));
  j["basis"] = std::move(basis);
  return j;
}

Json json_ugen(int m, long full_dim, long comm_rank, std::size_t count) {
  Json j;
  j["degree"] = m;
  j["ambient_dim"] = full_dim;
  j["commutator_rank"] = comm_rank;
  j["generator_count"] = static_cast<long>(count);
  return j;
}

}  // namespace dertower
