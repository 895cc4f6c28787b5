#pragma once
#include <optional>
#include <string>

#include "dertower/cache.hpp"
#include "dertower/rep.hpp"

namespace dertower {

struct Budget {
  long max_dim = 500000;   // largest ambient dimension we will echelonize
  long max_bits = 200000;  // per-coefficient bit cap
  double timeout_s = 0;    // wall clock; 0 disables
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

class BudgetGuard {
 public:
  explicit BudgetGuard(const Budget& b);
  void check_dim(long dim) const;
  void check_vec(const SparseVec& v) const;
  void check_time() const;

 private:
  Budget b_;
  double t0_;
};

void set_jobs(int jobs);

// Span of all brackets [UL^{(i)}, UL^{(j)}], i+j = m, inside UL^{(m)}.
// Independent of the ambient nilpotency class as long as m <= d-1.
Subspace commutator_component(LyndonTable& T, int m, Cache* cache = nullptr);
// Spec-facing wrapper with the (n, d, m) signature and precondition.
Subspace commutator_component(LyndonTable& T, int n, int d, int m, Cache* cache);

std::vector<SparseVec> u_gen_component(LyndonTable& T, int n, int d, int m,
                                       Cache* cache = nullptr);

struct HScanDegree {
  int m = 0;
  long ambient_dim = 0;
  long invariant_rank = 0;
  bool found = false;
  double seconds = 0;
};

struct HScanResult {
  int n = 0;
  int requested_max = 0;
  int scanned_max = 0;  // degrees 2..scanned_max fully decided
  std::optional<int> found_degree;
  std::optional<SparseVec> witness;  // UL^{(found_degree)} coordinates
  bool budget_exceeded = false;
  std::string budget_reason;
  std::vector<HScanDegree> trace;

  // certified lower bound on h(n): found degree when found, otherwise
  // max(n(n-1), scanned_max + 1)
  int certified_h_lower() const;
  bool found() const { return found_degree.has_value(); }
};

HScanResult h_scan(LyndonTable& T, int n, int max_degree, const Budget& budget = {},
                   Cache* cache = nullptr);

struct MaincomTraceRow {
  int degree = 0;
  long closure_rank = 0;
  long full_dim = 0;
};

struct MaincomResult {
  bool generated = false;
  std::vector<MaincomTraceRow> trace;
};

MaincomResult verify_maincom(LyndonTable& T, int n, int d);

enum class TVerdict { HasT, NoT, Unknown };

struct TReport {
  TVerdict verdict = TVerdict::Unknown;
  std::string reason;
  int scanned_max = 0;
  std::optional<int> found_degree;
  HScanResult scan;
};

TReport property_t_verdict(int n, int d, const Budget& budget = {}, Cache* cache = nullptr);

struct CenterReport {
  int n = 0, d = 0;
  bool nontrivial = false;       // closed form: 2n | d-1
  bool computed_check = false;   // whether the invariant computation ran
  long invariant_rank = -1;      // rank of the GL_n(Z)-invariants when checked
};

CenterReport center_nontrivial(int n, int d, const Budget& budget = {});

const char* verdict_str(TVerdict v);

}  // namespace dertower
