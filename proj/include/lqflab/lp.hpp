#pragma once

#include <optional>
#include <vector>

#include "lqflab/matrix.hpp"
#include "lqflab/rational.hpp"

namespace lqflab {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEqual, Equal, GreaterEqual };
enum class VarBound { NonNegative, Free };

/// optimize c'x subject to A x (rel) b, with x_j >= 0 or free per variable.
struct LPProblem {
    Sense sense = Sense::Minimize;
    RationalVector objective;
    RationalMatrix constraints;
    std::vector<Relation> relations;
    RationalVector rhs;
    std::vector<VarBound> bounds;
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

const char* to_string(LPStatus s);

/// `value`, `primal` and `dual` are populated only when status is Optimal.
///
/// The dual vector is a certificate for the stated sense: b'y equals the
/// optimal value, and y satisfies the dual sign pattern of the problem
/// (for a minimization, y_i >= 0 on >= rows, y_i <= 0 on <= rows, and
/// A'y <= c on nonnegative columns; for a maximization all inequalities flip).
struct LPResult {
    LPStatus status = LPStatus::Infeasible;
    std::optional<Rational> value;
    RationalVector primal;
    RationalVector dual;
};

/// Two-phase primal simplex over exact rationals with Bland's rule.
/// Throws InvalidArgument on inconsistent dimensions and std::logic_error if
/// the primal or dual certificate fails exact re-verification.
LPResult solve_lp(const LPProblem& problem);

/// Exact checks used by the solver and by tests.
bool primal_feasible(const LPProblem& problem, const RationalVector& x);
bool dual_certifies(const LPProblem& problem, const RationalVector& y, const Rational& value);

}  // namespace lqflab
