#ifndef MTOR_CORE_DECISION_HPP
#define MTOR_CORE_DECISION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "core/pullback.hpp"

namespace mtor {

/**
 * Evidence that the map has an invariant loop: the k-th image of the loop is
 * its d-th power as cyclic paths. Degree d >= 1; d = 1 means a periodic
 * conjugacy class. The loop is tight and primitive.
 */
struct InvariantLoopCertificate {
  CyclicPath loop;
  int k = 0;
  int d = 0;
};

/**
 * Constants reported with a hyperbolicity verdict, derived from the
 * expansion exponent n, the stabilization depth L and the maximum edge
 * stretch. Exact integer arithmetic; the girth threshold coefficient is
 * astronomically large by design and feeds reports only. h_coefficient is
 * the factor in H(rho) = h_coefficient * rho.
 */
struct FlareConstants {
  int lambda_f = 0;
  int n = 0;
  std::int64_t stabilization_depth = 0;
  int k = 0;           // minimal k with 2^k > 2
  int r = 0;           // minimal r with 2^r (2 / lambda_f^{kn})^L >= 8
  std::int64_t m = 0;  // (2L + r) k n
  BigInt h_coefficient;

  bool operator==(const FlareConstants&) const = default;
};

// Throws if lambda_f < 2 (a stretch-1 map never satisfies the flare
// condition and carries no such constants).
FlareConstants flare_constants(int n, std::int64_t stabilization_depth, int lambda_f);

/**
 * Evidence for hyperbolicity: a per-edge expansion certificate on the
 * forest-collapsed graph plus a depth where the new core of the iterated
 * fibered product is empty. Flare constants are derived; they are absent
 * only in the degenerate case lambda_f = 1 (an acyclic domain).
 */
struct HyperbolicityCertificate {
  ExpansionCertificate expansion;
  std::int64_t stabilization_depth = 0;
  std::optional<FlareConstants> flare;
};

struct BudgetReport {
  int max_depth = 0;
  int reached_depth = 0;
  std::optional<std::int64_t> stabilization_bound;
  std::string reason;
};

struct Verdict {
  enum class Kind { hyperbolic, not_hyperbolic, inconclusive };
  Kind kind = Kind::inconclusive;
  std::optional<HyperbolicityCertificate> hyperbolic;
  std::optional<InvariantLoopCertificate> invariant_loop;
  std::optional<BudgetReport> budget;
};

struct DecideBudgets {
  int max_depth = 6;
  int k_budget = 0;                          // 0: derived from the stabilization bound
  std::int64_t d_cap = 4096;
  std::int64_t expansion_cap = 0;            // 0: 4 * edges * vertices
  std::int64_t max_subdivision_darts = 1'000'000;
  std::int64_t max_pullback_darts = 4'000'000;
};

// Finds a degree-1 invariant loop if one exists: the periodic part of the
// non-expanding subgraph hosts every such loop, so an empty core there rules
// them out and a nonempty core always contains one.
std::optional<InvariantLoopCertificate> detect_degree_one(const GraphMap& f);

// Searches m = 1..k_budget for the image of c being a power of c. Stops
// early when image lengths pass d_cap * l(c) or when the image orbit
// revisits a value.
std::optional<InvariantLoopCertificate> certify_invariant_loop(const GraphMap& f,
                                                               const CyclicPath& c,
                                                               int k_budget,
                                                               std::int64_t d_cap);

// First Betti number summed over components.
std::int64_t graph_rank(const Graph& g);

// Depth from which new-core components are all circles or gone for good:
// 2 (rank - 1)^2.
std::int64_t circles_from_depth(const Graph& g);

/**
 * Conservative depth cap: if the new cores survive past this depth, an
 * invariant loop of degree >= 2 exists. Assembled by a pigeonhole argument
 * from five readouts of the depth-M new core (M = circles_from_depth):
 *
 *   M; C = number of new-core components at depth M (for M = 0 the
 *   components of the domain itself, which is then a circle); E = number of
 *   edges; N* = max subloop count over minimal roots of the component
 *   projections; l* = max projection length.
 *
 * The bound is M + C*E*(E*(N*+1)*l* + 2) + E. Reading of the count: a run
 * of consecutive surviving depths beyond M pins, by pigeonhole over the C
 * components and E edges, one component and one expanding edge that recur;
 * E*(N*+1)*l* depths suffice for the recurring edge to sweep N*+1 periods of
 * the component's root loop, after which two sweeps share a remainder
 * subloop and splice into a power equation for the root; the +2 and the
 * trailing +E pad the splice and the settling of single-edge orbits.
 *
 * The value is used only to truncate the depth search. No verdict is ever
 * derived from reaching it: running past the cap reports inconclusive.
 *
 * Throws std::logic_error if a depth-M new-core component is not a circle.
 */
std::int64_t stabilization_bound(const GraphMap& f);

// The full decision pipeline. Throws std::invalid_argument when the input
// is not an immersion (message carries the violating darts).
Verdict decide(const GraphMap& f, const DecideBudgets& budgets = {});

// Re-derives every claim of a certificate-carrying verdict from scratch;
// false on any mismatch or malformed data. Inconclusive verdicts carry no
// certificate and yield false.
bool verify(const GraphMap& f, const Verdict& v);

}  // namespace mtor

#endif  // MTOR_CORE_DECISION_HPP
