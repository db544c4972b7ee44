#include "wdvv/linear_solver.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wdvv/parser.hpp"

namespace wdvv {

void LinearSystem::add_row(SparseRow row) {
    std::sort(row.lhs.begin(), row.lhs.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [c, v] : row.lhs)
        if (c >= unknowns_) throw std::out_of_range("LinearSystem: column out of range");
    rows_.push_back(std::move(row));
}

void LinearSystem::add_row(std::vector<std::pair<std::size_t, Poly>> lhs, Poly rhs) {
    SparseRow r;
    r.rhs = RationalExpr(ring_, std::move(rhs));
    for (auto& [c, p] : lhs) {
        if (p.is_zero()) continue;
        r.lhs.emplace_back(c, RationalExpr(ring_, std::move(p)));
    }
    add_row(std::move(r));
}

bool LinearSystem::all_rational() const {
    for (auto& row : rows_) {
        if (!row.rhs.is_constant() && !row.rhs.is_zero()) return false;
        for (auto& [c, v] : row.lhs)
            if (!v.is_constant()) return false;
    }
    return true;
}

namespace {

// ---------------------------------------------------------------------------
// Internal row forms.  The RHS lives at column `ncols` so inconsistent rows
// show up as a pivot in the augmented column.
// ---------------------------------------------------------------------------

struct QRow {
    std::vector<std::pair<std::uint32_t, Rational>> e;  // sorted by column

    bool empty() const { return e.empty(); }
    std::uint32_t lead() const { return e.front().first; }

    /// Integer-primitive scaling with positive leading coefficient keeps the
    /// entries small across eliminations.
    void normalize() {
        if (e.empty()) return;
        mpz_class g = 0, l = 1;
        for (auto& [c, v] : e) {
            g = gcd_z(g, v.num());
            l = lcm_z(l, v.den());
        }
        Rational f(mpq_class(l) / mpq_class(g));
        if (e.front().second.sign() < 0) f = -f;
        for (auto& [c, v] : e) v *= f;
    }
};

QRow combine_q(const QRow& r, const Rational& rc, const QRow& p, const Rational& pc) {
    // rc * r - pc * p, merged
    QRow out;
    out.e.reserve(r.e.size() + p.e.size());
    std::size_t i = 0, j = 0;
    while (i < r.e.size() && j < p.e.size()) {
        if (r.e[i].first < p.e[j].first) {
            out.e.emplace_back(r.e[i].first, r.e[i].second * rc);
            ++i;
        } else if (r.e[i].first > p.e[j].first) {
            out.e.emplace_back(p.e[j].first, -(p.e[j].second * pc));
            ++j;
        } else {
            Rational v = r.e[i].second * rc - p.e[j].second * pc;
            if (!v.is_zero()) out.e.emplace_back(r.e[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    for (; i < r.e.size(); ++i) out.e.emplace_back(r.e[i].first, r.e[i].second * rc);
    for (; j < p.e.size(); ++j) out.e.emplace_back(p.e[j].first, -(p.e[j].second * pc));
    return out;
}

/// Fully reduces r against the pivot table (pivot rows normalized primitive,
/// keyed by leading column).
QRow reduce_q(QRow r, const std::vector<const QRow*>& pivot_at) {
    std::size_t i = 0;
    while (i < r.e.size()) {
        const QRow* p = pivot_at[r.e[i].first];
        if (!p) {
            ++i;
            continue;
        }
        r = combine_q(r, p->e.front().second, *p, r.e[i].second);
        r.normalize();
    }
    return r;
}

struct ERow {
    std::vector<std::pair<std::uint32_t, RationalExpr>> e;

    bool empty() const { return e.empty(); }
    std::uint32_t lead() const { return e.front().first; }
    std::size_t nnz() const { return e.size(); }
};

// ---------------------------------------------------------------------------

class EliminationBase {
public:
    EliminationBase(const RingPtr& ring, std::size_t ncols) : ring_(ring), ncols_(ncols) {}

protected:
    /// Invertibility gate for pivot coefficients.
    void check_pivot(const RationalExpr& v, PivotPolicy policy) const {
        const Poly& p = v.num();
        bool cst = p.is_constant();
        if (cst) return;
        // relation-variable content is cleared by the norm construction
        Poly probe = p;
        for (auto& rel : ring_->relations()) {
            if (!probe.depends_on(rel.var)) continue;
            if (rel.power != 2)
                throw CaseSplitRequired(p, to_string(p, *ring_));
            probe = ring_->reduce(probe * ring_->conjugate(probe, rel.var));
        }
        if (probe.is_zero())  // zero divisor: never invertible
            throw CaseSplitRequired(p, to_string(p, *ring_));
        if (policy == PivotPolicy::GenericField) return;
        if (!ring_->is_allowed_nonvanishing(probe))
            throw CaseSplitRequired(p, to_string(p, *ring_));
    }

    bool pivot_ok(const RationalExpr& v, PivotPolicy policy) const {
        try {
            check_pivot(v, policy);
            return true;
        } catch (const CaseSplitRequired&) {
            return false;
        }
    }

    RingPtr ring_;
    std::size_t ncols_;  // unknown columns; RHS column index == ncols_
};

/// Reference implementation: serial bucket elimination, columns in
/// ascending order, pivot = allowed candidate with fewest nonzeros
/// (densest-row-last), ties by arrival order.
class SerialElimination : EliminationBase {
public:
    SerialElimination(const RingPtr& ring, std::size_t ncols, PivotPolicy policy)
        : EliminationBase(ring, ncols), policy_(policy) {}

    void add(ERow r) {
        if (r.empty()) return;
        buckets_[r.lead()].push_back(std::move(r));
    }

    /// Runs the elimination and returns rows in reduced echelon form
    /// (leading coefficient 1, eliminated above and below).
    std::vector<ERow> run() {
        std::map<std::uint32_t, ERow> pivots;
        while (!buckets_.empty()) {
            auto it = buckets_.begin();
            std::uint32_t col = it->first;
            std::vector<ERow> rows = std::move(it->second);
            buckets_.erase(it);
            auto pit = pivots.find(col);
            std::size_t start = 0;
            if (pit == pivots.end() && col < ncols_) {
                // choose the pivot among all candidates for this column
                std::size_t best = rows.size();
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (!pivot_ok(rows[i].e.front().second, policy_)) continue;
                    if (best == rows.size() || rows[i].nnz() < rows[best].nnz()) best = i;
                }
                if (best == rows.size()) {
                    // nothing invertible: re-raise with the first candidate
                    check_pivot(rows.front().e.front().second, policy_);
                }
                ERow p = std::move(rows[best]);
                rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
                normalize_leading(p);
                pit = pivots.emplace(col, std::move(p)).first;
            } else if (pit == pivots.end()) {
                // pivot in the augmented column: the system is inconsistent,
                // but only provably so when the value cannot vanish
                check_pivot(rows.front().e.front().second, policy_);
                ERow p = std::move(rows.front());
                start = 1;
                normalize_leading(p);
                pit = pivots.emplace(col, std::move(p)).first;
            }
            for (std::size_t i = start; i < rows.size(); ++i) {
                ERow red = eliminate(std::move(rows[i]), pit->second);
                if (!red.empty()) buckets_[red.lead()].push_back(std::move(red));
            }
        }
        // back-substitution to full RREF
        std::vector<ERow> out;
        std::vector<int> done_at(ncols_ + 1, -1);
        for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
            ERow r = std::move(it->second);
            for (std::size_t i = 1; i < r.e.size();) {
                int d = done_at[r.e[i].first];
                if (d < 0) {
                    ++i;
                    continue;
                }
                r = eliminate_at(std::move(r), i, out[static_cast<std::size_t>(d)]);
            }
            done_at[r.lead()] = static_cast<int>(out.size());
            out.push_back(std::move(r));
        }
        std::reverse(out.begin(), out.end());
        return out;
    }

private:
    void normalize_leading(ERow& r) {
        RationalExpr inv = r.e.front().second.inverse();
        for (auto& [c, v] : r.e) v *= inv;
    }

    static ERow eliminate(ERow r, const ERow& p) {
        // p has leading coefficient 1 at column p.lead()
        std::size_t i = 0;
        while (i < r.e.size() && r.e[i].first != p.lead()) ++i;
        if (i == r.e.size()) return r;
        return eliminate_at(std::move(r), i, p);
    }

    static ERow eliminate_at(ERow r, std::size_t i, const ERow& p) {
        RationalExpr f = r.e[i].second;
        ERow out;
        out.e.reserve(r.e.size() + p.e.size());
        std::size_t a = 0, b = 0;
        while (a < r.e.size() && b < p.e.size()) {
            if (r.e[a].first < p.e[b].first) {
                out.e.push_back(std::move(r.e[a++]));
            } else if (r.e[a].first > p.e[b].first) {
                out.e.emplace_back(p.e[b].first, -(f * p.e[b].second));
                ++b;
            } else {
                RationalExpr v = r.e[a].second - f * p.e[b].second;
                if (!v.is_zero()) out.e.emplace_back(r.e[a].first, std::move(v));
                ++a;
                ++b;
            }
        }
        for (; a < r.e.size(); ++a) out.e.push_back(std::move(r.e[a]));
        for (; b < p.e.size(); ++b) out.e.emplace_back(p.e[b].first, -(f * p.e[b].second));
        return out;
    }

    PivotPolicy policy_;
    std::map<std::uint32_t, std::vector<ERow>> buckets_;
};

/// OpenMP kernel for all-rational systems: repeated data-parallel sweeps
/// reduce every pending row against the current pivot table, then new pivots
/// are installed deterministically.  The final reduced echelon form is the
/// canonical one, independent of scheduling.
class ParallelElimination {
public:
    explicit ParallelElimination(std::size_t ncols) : ncols_(ncols) {}

    void add(QRow r) {
        if (r.empty()) return;
        r.normalize();
        pending_.push_back(std::move(r));
    }

    std::vector<QRow> run() {
        std::vector<std::unique_ptr<QRow>> pivots;  // stable addresses
        std::vector<const QRow*> pivot_at(ncols_ + 1, nullptr);

        // deterministic work order: sparse rows first
        std::stable_sort(pending_.begin(), pending_.end(),
                         [](const QRow& a, const QRow& b) { return a.e.size() < b.e.size(); });

        while (!pending_.empty()) {
            std::vector<QRow> reduced(pending_.size());
            const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(pending_.size());
#pragma omp parallel for schedule(dynamic, 16)
            for (std::ptrdiff_t i = 0; i < n; ++i)
                reduced[i] = reduce_q(std::move(pending_[i]), pivot_at);

            std::vector<QRow> next;
            for (auto& r : reduced) {
                if (r.empty()) continue;
                if (pivot_at[r.lead()]) {
                    next.push_back(std::move(r));  // race with a newer pivot: go again
                    continue;
                }
                pivots.push_back(std::make_unique<QRow>(std::move(r)));
                pivot_at[pivots.back()->lead()] = pivots.back().get();
            }
            pending_ = std::move(next);
        }

        // leading-1 scaling, then back-substitution to full RREF
        std::sort(pivots.begin(), pivots.end(),
                  [](const auto& a, const auto& b) { return a->lead() > b->lead(); });
        for (auto& up : pivots) {
            Rational inv = up->e.front().second.inverse();
            for (auto& [c, v] : up->e) v *= inv;
        }
        std::vector<QRow> out;
        std::vector<int> done_at(ncols_ + 1, -1);
        for (auto& up : pivots) {
            QRow r = std::move(*up);
            std::size_t i = 1;
            while (i < r.e.size()) {
                int d = done_at[r.e[i].first];
                if (d < 0) {
                    ++i;
                    continue;
                }
                r = combine_q(r, Rational(1), out[static_cast<std::size_t>(d)],
                              r.e[i].second);
            }
            done_at[r.lead()] = static_cast<int>(out.size());
            out.push_back(std::move(r));
        }
        std::sort(out.begin(), out.end(),
                  [](const QRow& a, const QRow& b) { return a.lead() < b.lead(); });
        return out;
    }

private:
    std::size_t ncols_;
    std::vector<QRow> pending_;
};

}  // namespace

LinearSolution LinearSystem::solve_serial(PivotPolicy policy) const {
    SerialElimination elim(ring_, unknowns_, policy);
    for (auto& row : rows_) {
        ERow r;
        for (auto& [c, v] : row.lhs)
            if (!v.is_zero()) r.e.emplace_back(static_cast<std::uint32_t>(c), v);
        if (!row.rhs.is_zero())
            r.e.emplace_back(static_cast<std::uint32_t>(unknowns_), -row.rhs);
        elim.add(std::move(r));
    }
    auto rref = elim.run();

    LinearSolution sol;
    const RationalExpr zero(ring_);
    const RationalExpr one = RationalExpr::constant(ring_, Rational(1));
    std::vector<const ERow*> row_of(unknowns_, nullptr);
    for (auto& r : rref) {
        if (r.lead() == unknowns_) {
            sol.consistent = false;
            return sol;
        }
        sol.pivot_columns.push_back(r.lead());
        row_of[r.lead()] = &r;
    }
    sol.particular.assign(unknowns_, zero);
    for (auto& r : rref) {
        for (auto& [c, v] : r.e)
            if (c == unknowns_) sol.particular[r.lead()] = -v;
    }
    for (std::size_t f = 0; f < unknowns_; ++f) {
        if (row_of[f]) continue;
        std::vector<RationalExpr> vec(unknowns_, zero);
        vec[f] = one;
        for (auto& r : rref)
            for (auto& [c, v] : r.e)
                if (c == f) vec[r.lead()] = -v;
        sol.basis.push_back(std::move(vec));
    }
    return sol;
}

LinearSolution LinearSystem::solve(PivotPolicy policy, bool parallel) const {
    if (!parallel || !all_rational()) return solve_serial(policy);

    ParallelElimination elim(unknowns_);
    for (auto& row : rows_) {
        QRow r;
        for (auto& [c, v] : row.lhs)
            if (!v.is_zero())
                r.e.emplace_back(static_cast<std::uint32_t>(c), v.constant_value());
        if (!row.rhs.is_zero())
            r.e.emplace_back(static_cast<std::uint32_t>(unknowns_), -row.rhs.constant_value());
        elim.add(std::move(r));
    }
    auto rref = elim.run();

    LinearSolution sol;
    const RationalExpr zero(ring_);
    auto lift = [&](const Rational& q) { return RationalExpr::constant(ring_, q); };
    std::vector<bool> has_pivot(unknowns_, false);
    for (auto& r : rref) {
        if (r.lead() == unknowns_) {
            sol.consistent = false;
            return sol;
        }
        sol.pivot_columns.push_back(r.lead());
        has_pivot[r.lead()] = true;
    }
    sol.particular.assign(unknowns_, zero);
    for (auto& r : rref)
        for (auto& [c, v] : r.e)
            if (c == unknowns_) sol.particular[r.lead()] = lift(-v);
    for (std::size_t f = 0; f < unknowns_; ++f) {
        if (has_pivot[f]) continue;
        std::vector<RationalExpr> vec(unknowns_, zero);
        vec[f] = lift(Rational(1));
        for (auto& r : rref)
            for (auto& [c, v] : r.e)
                if (c == f) vec[r.lead()] = lift(-v);
        sol.basis.push_back(std::move(vec));
    }
    return sol;
}

bool LinearSystem::satisfied_by(const std::vector<RationalExpr>& x) const {
    for (auto& row : rows_) {
        RationalExpr acc(ring_);
        for (auto& [c, v] : row.lhs) acc += v * x[c];
        if (acc != row.rhs) return false;
    }
    return true;
}

}  // namespace wdvv
