#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "wdvv/expr.hpp"

namespace wdvv {

/// Raised when an elimination step would divide by a parameter polynomial
/// that is neither a constant, a unit modulo the ring relations, nor a
/// product of declared nonvanishing polynomials.
struct CaseSplitRequired : std::runtime_error {
    Poly pivot;
    CaseSplitRequired(Poly p, const std::string& pretty)
        : std::runtime_error("case split required: pivot polynomial '" + pretty
                             + "' is not declared nonvanishing"),
          pivot(std::move(p)) {}
};

enum class PivotPolicy {
    Strict,       ///< divisions gated by the ring's nonvanishing list
    GenericField  ///< any non-zero-divisor is invertible (fraction-field solving)
};

struct SparseRow {
    std::vector<std::pair<std::size_t, RationalExpr>> lhs;  // (column, coeff), sorted
    RationalExpr rhs;
};

struct LinearSolution {
    bool consistent = true;
    std::vector<RationalExpr> particular;          // empty when inconsistent
    std::vector<std::vector<RationalExpr>> basis;  // homogeneous solution basis
    std::vector<std::size_t> pivot_columns;

    std::size_t rank() const { return pivot_columns.size(); }
    std::size_t dimension() const { return basis.size(); }
};

/// Exact sparse linear system over Q extended by the ring's parameters.
/// solve() runs the OpenMP sweep kernel when every coefficient is a plain
/// rational; solve_serial() is the reference bucket elimination.  Both end
/// in the (unique) reduced row echelon form, so results are bit-identical
/// regardless of parallelism.
class LinearSystem {
public:
    LinearSystem(RingPtr ring, std::size_t unknowns)
        : ring_(std::move(ring)), unknowns_(unknowns) {}

    const RingPtr& ring() const { return ring_; }
    std::size_t unknown_count() const { return unknowns_; }
    std::size_t row_count() const { return rows_.size(); }

    void add_row(SparseRow row);

    /// Convenience: lhs entries given as polynomials in the ring parameters.
    void add_row(std::vector<std::pair<std::size_t, Poly>> lhs, Poly rhs);

    LinearSolution solve(PivotPolicy policy = PivotPolicy::Strict,
                         bool parallel = true) const;
    LinearSolution solve_serial(PivotPolicy policy = PivotPolicy::Strict) const;

    /// Residual check: substitutes x into every row.
    bool satisfied_by(const std::vector<RationalExpr>& x) const;

private:
    bool all_rational() const;

    RingPtr ring_;
    std::size_t unknowns_;
    std::vector<SparseRow> rows_;
};

}  // namespace wdvv
