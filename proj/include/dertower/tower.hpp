#pragma once
#include "dertower/analysis.hpp"

namespace dertower {

// Named per-degree subspaces of UL(n,d) in the canonical vectorization.
struct GradedFamily {
  int n = 0, d = 0;
  std::string name;
  std::map<int, Subspace> by_degree;  // degree k -> subspace of UL^{(k)}

  long total_rank() const;
  const Subspace& at(int k) const;
  bool equals(const GradedFamily& o) const;
};

enum class ChainVariant { Sl, GlZ };

struct IdealChain {
  int n = 0, d = 0;
  ChainVariant variant = ChainVariant::Sl;
  GradedFamily zero_part;             // UL^{[0]} (trivial part for the variant)
  GradedFamily plus_part;             // UL^+
  GradedFamily ul_infinity;           // ideal generated by [UL^+, UL^+]
  std::vector<GradedFamily> members;  // UL_0 ⊇ UL_1 ⊇ ...
  std::vector<Subspace> center_slices;  // CUL_k: degree-(d-1) slice of UL_k
  int stabilization_index = 0;          // least k with UL_k = UL_{k+1}
};

IdealChain ul_chain(LyndonTable& T, int n, int d, ChainVariant variant,
                    const Budget& budget = {}, Cache* cache = nullptr);

struct PQR {
  long p = 0, q = 0, r = 0;
  bool operator==(const PQR&) const = default;
};

PQR pqr(LyndonTable& T, int n, int d, Cache* cache = nullptr);

// Per sl-type lambda: dim W_k^lambda = dim Hom_sl(U_gen,k^lambda, CUL_k^lambda)
// and its zero-trace subspace R_k^lambda.
std::map<std::vector<int>, std::pair<long, long>> w_dims(LyndonTable& T, const IdealChain& chain,
                                                         int k);

struct SSpaceReport {
  int n = 0, d = 0;
  long dim = 0;            // closed form
  bool verified = false;   // the direct centralizer computation ran
  long computed_dim = -1;  // dimension from the direct computation
  bool adx2_lemma_checked = false;  // centralizer of the AD(x1^2) module matched
};

SSpaceReport s_space(LyndonTable& T, int n, int d, const Budget& budget = {});

struct CGammaCase {
  int case_id = 0;
  std::string condition;            // matched predicate on (p,q,r)
  std::vector<std::string> stages;  // symbolic group structure per step, from step 2
  int stabilize_step = 0;
  std::string note;
};

CGammaCase cgamma_case(const PQR& v);

enum class TowerCase { NoCenter, Center, TwoGeneratorSpecial };

struct TowerReport {
  int n = 0, d = 0;
  TowerCase case_tag = TowerCase::NoCenter;
  bool center_nontrivial = false;
  HScanResult h_info;
  int h_lower = 0;      // certified lower bound on h(n) used in the formulas
  bool h_exact = false; // scan pinned h(n) exactly
  Rat bound_rational = Rat(0);
  long bound_floor = 0;
  std::optional<PQR> pqr_data;
  std::optional<CGammaCase> cgamma;
  std::vector<std::string> caveats;
};

TowerReport height_report(int n, int d, const Budget& budget = {}, Cache* cache = nullptr);

const char* tower_case_str(TowerCase c);

}  // namespace dertower
