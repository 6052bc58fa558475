#include "peakval/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <queue>
#include <sstream>

namespace peakval::lp {

int LpModel::add_var(double lb, double ub, double obj, std::string name) {
    lower.push_back(lb);
    upper.push_back(ub);
    objective.push_back(obj);
    var_names.push_back(std::move(name));
    return num_vars() - 1;
}

void LpModel::add_row(Sense sense, double rhs, std::vector<std::pair<int, double>> coeffs,
                      std::string name) {
    Row r;
    r.coeffs = std::move(coeffs);
    r.sense = sense;
    r.rhs = rhs;
    r.name = std::move(name);
    rows.push_back(std::move(r));
}

void LpModel::check() const {
    for (int j = 0; j < num_vars(); ++j) {
        if (std::isnan(lower[j]) || std::isnan(upper[j]) || lower[j] > upper[j])
            throw std::invalid_argument("lp: bad bounds on variable " + std::to_string(j));
    }
    for (const Row& r : rows)
        for (auto [j, v] : r.coeffs) {
            if (j < 0 || j >= num_vars())
                throw std::invalid_argument("lp: row references undeclared variable " +
                                            std::to_string(j));
            if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite row coefficient");
        }
}

namespace {

enum VState : unsigned char { kBasic, kAtLower, kAtUpper, kNbFree };

// Dense LU with partial pivoting; used to verify and repair terminal bases.
struct DenseLu {
    int m = 0;
    std::vector<double> a;   // row-major, factored in place
    std::vector<int> perm;

    bool factor(std::vector<double> mat, int dim) {
        m = dim;
        a = std::move(mat);
        perm.resize(m);
        for (int i = 0; i < m; ++i) perm[i] = i;
        for (int k = 0; k < m; ++k) {
            int p = k;
            double best = std::fabs(a[k * m + k]);
            for (int i = k + 1; i < m; ++i) {
                double v = std::fabs(a[i * m + k]);
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (best < 1e-13) return false;
            if (p != k) {
                for (int j = 0; j < m; ++j) std::swap(a[k * m + j], a[p * m + j]);
                std::swap(perm[k], perm[p]);
            }
            const double inv = 1.0 / a[k * m + k];
            for (int i = k + 1; i < m; ++i) {
                double f = a[i * m + k] * inv;
                a[i * m + k] = f;
                if (f == 0.0) continue;
                const double* rk = &a[k * m];
                double* ri = &a[i * m];
                for (int j = k + 1; j < m; ++j) ri[j] -= f * rk[j];
            }
        }
        return true;
    }

    void solve(const double* b, double* x) const {
        for (int i = 0; i < m; ++i) x[i] = b[perm[i]];
        for (int i = 1; i < m; ++i) {
            double s = x[i];
            const double* ri = &a[i * m];
            for (int j = 0; j < i; ++j) s -= ri[j] * x[j];
            x[i] = s;
        }
        for (int i = m - 1; i >= 0; --i) {
            double s = x[i];
            const double* ri = &a[i * m];
            for (int j = i + 1; j < m; ++j) s -= ri[j] * x[j];
            x[i] = s / ri[i];
        }
    }
};

class Simplex {
public:
    Simplex(const LpModel& model, const SolverOptions& opts, const double* lb_over,
            const double* ub_over)
        : model_(model), opts_(opts) {
        m_ = model.num_rows();
        nstruct_ = model.num_vars();
        ntot_ = nstruct_ + m_;

        cols_.resize(ntot_);
        for (int r = 0; r < m_; ++r)
            for (auto [j, v] : model.rows[r].coeffs)
                if (v != 0.0) cols_[j].push_back({r, v});
        for (int i = 0; i < m_; ++i) cols_[nstruct_ + i].push_back({i, 1.0});

        lb_.assign(ntot_, 0.0);
        ub_.assign(ntot_, 0.0);
        cost_.assign(ntot_, 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            lb_[j] = lb_over ? lb_over[j] : model.lower[j];
            ub_[j] = ub_over ? ub_over[j] : model.upper[j];
            cost_[j] = model.objective[j];
        }
        rhs_.resize(m_);
        for (int r = 0; r < m_; ++r) {
            rhs_[r] = model.rows[r].rhs;
            switch (model.rows[r].sense) {
                case Sense::le:
                    lb_[nstruct_ + r] = 0.0;
                    ub_[nstruct_ + r] = kInf;
                    break;
                case Sense::eq:
                    lb_[nstruct_ + r] = 0.0;
                    ub_[nstruct_ + r] = 0.0;
                    break;
                case Sense::ge:
                    lb_[nstruct_ + r] = -kInf;
                    ub_[nstruct_ + r] = 0.0;
                    break;
            }
        }

        double cmax = 0.0;
        for (int j = 0; j < nstruct_; ++j) cmax = std::max(cmax, std::fabs(cost_[j]));
        dtol2_ = opts.opt_tol * 1e-3 * std::max(1.0, cmax);
        dtol1_ = 1e-9;
    }

    LpSolution run() {
        init_basis();
        const long bland_at = static_cast<long>(opts_.bland_factor) * (m_ + nstruct_);
        const long cap = static_cast<long>(opts_.cap_factor) * (m_ + nstruct_);

        std::vector<double> y(m_), w(m_);
        std::vector<signed char> c1(m_);

        while (true) {
            if (iters_ > cap)
                throw NumericalError("lp: iteration cap exceeded (" + std::to_string(cap) +
                                     "); model is likely ill-conditioned");
            const bool bland = iters_ > bland_at;

            // Phase detection from current basic values.
            bool phase1 = false;
            for (int i = 0; i < m_; ++i) {
                const int bi = basic_[i];
                c1[i] = 0;
                if (xb_[i] < lb_[bi] - opts_.feas_tol)
                    c1[i] = -1, phase1 = true;
                else if (xb_[i] > ub_[bi] + opts_.feas_tol)
                    c1[i] = 1, phase1 = true;
            }

            // Dual vector for pricing: y = cB' * Binv.
            std::fill(y.begin(), y.end(), 0.0);
            if (phase1) {
                for (int i = 0; i < m_; ++i) {
                    if (c1[i] == 0) continue;
                    const double f = static_cast<double>(c1[i]);
                    const double* row = &binv_[static_cast<size_t>(i) * m_];
                    for (int k = 0; k < m_; ++k) y[k] += f * row[k];
                }
            } else {
                for (int i = 0; i < m_; ++i) {
                    const double f = cost_[basic_[i]];
                    if (f == 0.0) continue;
                    const double* row = &binv_[static_cast<size_t>(i) * m_];
                    for (int k = 0; k < m_; ++k) y[k] += f * row[k];
                }
            }

            // Price nonbasic columns.
            const double dtol = phase1 ? dtol1_ : dtol2_;
            int q = -1, dir = 0;
            double best_score = dtol;
            for (int j = 0; j < ntot_; ++j) {
                const VState st = static_cast<VState>(vstat_[j]);
                if (st == kBasic || lb_[j] == ub_[j]) continue;
                double d = phase1 ? 0.0 : cost_[j];
                for (auto [r, v] : cols_[j]) d -= y[r] * v;
                int cand_dir = 0;
                if (st == kAtLower && d < -dtol)
                    cand_dir = 1;
                else if (st == kAtUpper && d > dtol)
                    cand_dir = -1;
                else if (st == kNbFree && std::fabs(d) > dtol)
                    cand_dir = d < 0 ? 1 : -1;
                if (cand_dir == 0) continue;
                if (bland) {
                    q = j;
                    dir = cand_dir;
                    break;
                }
                if (std::fabs(d) > best_score) {
                    best_score = std::fabs(d);
                    q = j;
                    dir = cand_dir;
                }
            }

            if (q < 0) {
                if (phase1) {
                    if (finalize_infeasible()) continue;  // drift repaired; keep iterating
                    return assemble(LpStatus::infeasible);
                }
                if (finalize_optimal()) continue;  // repaired basis, resume pivoting
                return assemble(LpStatus::optimal);
            }

            // FTRAN: w = Binv * a_q.
            std::fill(w.begin(), w.end(), 0.0);
            for (auto [r, v] : cols_[q])
                for (int i = 0; i < m_; ++i) w[i] += binv_[static_cast<size_t>(i) * m_ + r] * v;

            // Ratio test; in phase 1 infeasible basics block at the bound they are
            // approaching (first-breakpoint rule).
            int leave = -1, leave_to = 0;
            double theta = kInf, leave_w = 0.0;
            ratio_scan(w, dir, phase1, 1e-9, leave, leave_to, theta, leave_w, bland);
            const double span = ub_[q] - lb_[q];  // bound flip distance (inf for free)
            bool flip = std::isfinite(span) && span <= theta;
            if (!flip && leave < 0) {
                // Nothing blocked at the safe pivot threshold; rescan tiny pivots
                // before declaring the problem unbounded.
                ratio_scan(w, dir, phase1, 1e-12, leave, leave_to, theta, leave_w, bland);
                flip = std::isfinite(span) && span <= theta;
                if (!flip && leave < 0) {
                    if (phase1)
                        throw NumericalError("lp: phase-1 ray; numerical breakdown");
                    return assemble(LpStatus::unbounded);
                }
            }

            const double step = flip ? span : std::max(theta, 0.0);
            if (step != 0.0) {
                const double delta = dir * step;
                for (int i = 0; i < m_; ++i) xb_[i] -= delta * w[i];
            }

            if (flip) {
                vstat_[q] = vstat_[q] == kAtLower ? kAtUpper : kAtLower;
                xn_[q] = vstat_[q] == kAtLower ? lb_[q] : ub_[q];
            } else {
                const int blv = basic_[leave];
                vstat_[blv] = leave_to == 0 ? kAtLower : kAtUpper;
                xn_[blv] = leave_to == 0 ? lb_[blv] : ub_[blv];
                xb_[leave] = xn_[q] + dir * step;
                vstat_[q] = kBasic;
                basic_[leave] = q;
                pivot_binv(leave, w);
            }
            ++iters_;
        }
    }

private:
    void init_basis() {
        vstat_.assign(ntot_, kAtLower);
        xn_.assign(ntot_, 0.0);
        for (int j = 0; j < ntot_; ++j) {
            if (std::isfinite(lb_[j])) {
                vstat_[j] = kAtLower;
                xn_[j] = lb_[j];
            } else if (std::isfinite(ub_[j])) {
                vstat_[j] = kAtUpper;
                xn_[j] = ub_[j];
            } else {
                vstat_[j] = kNbFree;
                xn_[j] = 0.0;
            }
        }
        basic_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            basic_[i] = nstruct_ + i;
            vstat_[nstruct_ + i] = kBasic;
        }
        binv_.assign(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + i] = 1.0;
        xb_ = reduced_rhs();
        iters_ = 0;
        resumes_ = 0;
    }

    // b minus the contribution of nonbasic variables sitting away from zero.
    std::vector<double> reduced_rhs() const {
        std::vector<double> r = rhs_;
        for (int j = 0; j < ntot_; ++j) {
            if (vstat_[j] == kBasic || xn_[j] == 0.0) continue;
            for (auto [row, v] : cols_[j]) r[row] -= v * xn_[j];
        }
        return r;
    }

    void ratio_scan(const std::vector<double>& w, int dir, bool phase1, double zpiv, int& leave,
                    int& leave_to, double& theta, double& leave_w, bool bland) const {
        leave = -1;
        theta = kInf;
        leave_w = 0.0;
        for (int i = 0; i < m_; ++i) {
            const double wv = dir * w[i];
            if (std::fabs(wv) <= zpiv) continue;
            const int bi = basic_[i];
            const double xi = xb_[i], li = lb_[bi], ui = ub_[bi];
            double t = kInf;
            int to = 0;
            const bool below = phase1 && xi < li - opts_.feas_tol;
            const bool above = phase1 && xi > ui + opts_.feas_tol;
            if (below) {
                if (wv < 0.0) t = (li - xi) / (-wv), to = 0;
            } else if (above) {
                if (wv > 0.0) t = (xi - ui) / wv, to = 1;
            } else if (wv > 0.0) {
                if (std::isfinite(li)) t = (xi - li) / wv, to = 0;
            } else {
                if (std::isfinite(ui)) t = (ui - xi) / (-wv), to = 1;
            }
            if (t == kInf) continue;
            if (t < 0.0) t = 0.0;
            bool take = false;
            if (t < theta - 1e-10)
                take = true;
            else if (t <= theta + 1e-10 && leave >= 0) {
                // Tie break: Bland wants the lowest variable index, otherwise
                // prefer the numerically largest pivot.
                take = bland ? bi < basic_[leave] : std::fabs(w[i]) > std::fabs(leave_w);
            }
            if (take) {
                theta = t;
                leave = i;
                leave_to = to;
                leave_w = w[i];
            }
        }
    }

    void pivot_binv(int r, const std::vector<double>& w) {
        const double piv = w[r];
        if (std::fabs(piv) < 1e-12)
            throw NumericalError("lp: vanishing pivot; basis is numerically singular");
        double* rowr = &binv_[static_cast<size_t>(r) * m_];
        const double inv = 1.0 / piv;
        for (int k = 0; k < m_; ++k) rowr[k] *= inv;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = w[i];
            if (std::fabs(f) < 1e-14) continue;
            double* rowi = &binv_[static_cast<size_t>(i) * m_];
            for (int k = 0; k < m_; ++k) rowi[k] -= f * rowr[k];
        }
    }

    bool lu_factor_basis(DenseLu& lu) const {
        std::vector<double> bmat(static_cast<size_t>(m_) * m_, 0.0);
        for (int i = 0; i < m_; ++i)
            for (auto [r, v] : cols_[basic_[i]]) bmat[static_cast<size_t>(r) * m_ + i] = v;
        return lu.factor(std::move(bmat), m_);
    }

    // Recompute basic values through a fresh factorization. Returns false if the
    // basis is singular (treated as numerical failure upstream).
    bool recompute_xb() {
        DenseLu lu;
        if (!lu_factor_basis(lu)) return false;
        std::vector<double> r = reduced_rhs();
        std::vector<double> clean(m_);
        lu.solve(r.data(), clean.data());
        xb_ = std::move(clean);
        return true;
    }

    bool rebuild_binv() {
        DenseLu lu;
        if (!lu_factor_basis(lu)) return false;
        std::vector<double> e(m_, 0.0), col(m_);
        for (int k = 0; k < m_; ++k) {
            e[k] = 1.0;
            lu.solve(e.data(), col.data());
            e[k] = 0.0;
            for (int i = 0; i < m_; ++i) binv_[static_cast<size_t>(i) * m_ + k] = col[i];
        }
        return true;
    }

    bool primal_feasible() const {
        for (int i = 0; i < m_; ++i) {
            const int bi = basic_[i];
            if (xb_[i] < lb_[bi] - opts_.feas_tol || xb_[i] > ub_[bi] + opts_.feas_tol)
                return false;
        }
        return true;
    }

    // Terminal verification for an optimality claim. Returns true when the basis
    // had drifted and iteration should continue on repaired values.
    bool finalize_optimal() {
        if (!recompute_xb()) throw NumericalError("lp: singular terminal basis");
        if (primal_feasible()) return false;
        if (++resumes_ > 3) throw NumericalError("lp: repeated loss of feasibility");
        if (!rebuild_binv()) throw NumericalError("lp: singular terminal basis");
        return true;
    }

    // Before certifying infeasibility make sure it is not accumulated drift.
    bool finalize_infeasible() {
        if (!recompute_xb()) throw NumericalError("lp: singular terminal basis");
        if (!primal_feasible()) return false;
        if (++resumes_ > 3) return false;
        if (!rebuild_binv()) throw NumericalError("lp: singular terminal basis");
        return true;
    }

    LpSolution assemble(LpStatus status) const {
        LpSolution s;
        s.status = status;
        s.iterations = static_cast<int>(iters_);
        s.x.assign(nstruct_, 0.0);
        for (int j = 0; j < nstruct_; ++j) s.x[j] = vstat_[j] == kBasic ? 0.0 : xn_[j];
        for (int i = 0; i < m_; ++i)
            if (basic_[i] < nstruct_) s.x[basic_[i]] = xb_[i];
        s.row_activity.assign(m_, 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            if (s.x[j] == 0.0) continue;
            for (auto [r, v] : cols_[j]) s.row_activity[r] += v * s.x[j];
        }
        if (status == LpStatus::optimal) {
            double obj = 0.0;
            for (int j = 0; j < nstruct_; ++j) obj += cost_[j] * s.x[j];
            s.objective = obj;
        }
        return s;
    }

    const LpModel& model_;
    SolverOptions opts_;
    int m_ = 0, nstruct_ = 0, ntot_ = 0;
    std::vector<std::vector<std::pair<int, double>>> cols_;
    std::vector<double> lb_, ub_, cost_, rhs_;
    std::vector<unsigned char> vstat_;
    std::vector<int> basic_;
    std::vector<double> binv_, xb_, xn_;
    double dtol1_ = 1e-9, dtol2_ = 1e-9;
    long iters_ = 0;
    int resumes_ = 0;
};

LpSolution solve_bounded(const LpModel& m, const SolverOptions& opts, const double* lb_over,
                         const double* ub_over) {
    Simplex s(m, opts, lb_over, ub_over);
    return s.run();
}

}  // namespace

LpSolution solve_lp(const LpModel& m, const SolverOptions& opts) {
    m.check();
    return solve_bounded(m, opts, nullptr, nullptr);
}

namespace {

struct SosCheck {
    bool feasible = true;
    int branch_set = -1;     // set index to branch on
    int split = -1;          // weighted-center member position
};

// Window of still-allowed member positions per set, per node.
using Windows = std::vector<std::pair<int, int>>;

SosCheck check_sos(const std::vector<Sos2Set>& sets, const Windows& win,
                   const std::vector<double>& x, double ztol) {
    SosCheck out;
    int worst_count = 2;
    for (size_t k = 0; k < sets.size(); ++k) {
        const auto& vars = sets[k].vars;
        int first = -1, last = -1, count = 0;
        double wsum = 0.0, wpos = 0.0;
        for (int p = win[k].first; p <= win[k].second; ++p) {
            const double v = x[vars[p]];
            if (v > ztol) {
                if (first < 0) first = p;
                last = p;
                ++count;
                wsum += v;
                wpos += v * p;
            }
        }
        const bool ok = count <= 1 || (count == 2 && last == first + 1);
        if (ok) continue;
        out.feasible = false;
        if (count > worst_count || out.branch_set < 0) {
            worst_count = count;
            out.branch_set = static_cast<int>(k);
            int center = static_cast<int>(std::lround(wpos / wsum));
            center = std::clamp(center, win[k].first + 1, win[k].second - 1);
            out.split = center;
        }
    }
    return out;
}

}  // namespace

LpSolution solve_sos2(const LpModel& m, const std::vector<Sos2Set>& sets,
                      const SolverOptions& opts) {
    m.check();
    for (const auto& s : sets) {
        if (s.vars.size() < 2) throw std::invalid_argument("sos2: set needs >= 2 members");
        std::vector<int> sorted = s.vars;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw std::invalid_argument("sos2: duplicate member");
        for (int j : s.vars) {
            if (j < 0 || j >= m.num_vars()) throw std::invalid_argument("sos2: member out of range");
            if (m.lower[j] < 0.0 || m.upper[j] > 1.0)
                throw std::invalid_argument("sos2: member bounds must lie within [0,1]");
        }
    }
    if (sets.empty()) return solve_lp(m, opts);

    struct Node {
        double bound;
        Windows win;
        bool operator>(const Node& o) const { return bound > o.bound; }
    };

    const double ztol = 1e-9;
    std::vector<double> ub_base(m.upper);
    std::vector<double> ub_node(m.num_vars());

    auto solve_node = [&](const Windows& win) {
        ub_node = ub_base;
        for (size_t k = 0; k < sets.size(); ++k)
            for (size_t p = 0; p < sets[k].vars.size(); ++p)
                if (static_cast<int>(p) < win[k].first || static_cast<int>(p) > win[k].second)
                    ub_node[sets[k].vars[p]] = 0.0;
        return solve_bounded(m, opts, nullptr, ub_node.data());
    };

    Windows root;
    root.reserve(sets.size());
    for (const auto& s : sets) root.push_back({0, static_cast<int>(s.vars.size()) - 1});

    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> open;
    LpSolution incumbent;
    bool have_incumbent = false;
    int nodes = 0;
    int total_iters = 0;

    LpSolution relax = solve_node(root);
    ++nodes;
    total_iters += relax.iterations;
    if (relax.status == LpStatus::unbounded) {
        relax.bb_nodes = nodes;
        return relax;
    }
    if (relax.status == LpStatus::optimal) {
        SosCheck chk = check_sos(sets, root, relax.x, ztol);
        if (chk.feasible) {
            relax.bb_nodes = nodes;
            relax.iterations = total_iters;
            return relax;
        }
        Windows l = root, r = root;
        l[chk.branch_set].second = chk.split;
        r[chk.branch_set].first = chk.split;
        open.push({relax.objective, std::move(l)});
        open.push({relax.objective, std::move(r)});
    }

    while (!open.empty()) {
        Node node = open.top();
        open.pop();
        if (have_incumbent &&
            node.bound >= incumbent.objective - 1e-9 * std::max(1.0, std::fabs(incumbent.objective)))
            break;  // best-bound order: every remaining node is dominated
        LpSolution sol = solve_node(node.win);
        ++nodes;
        total_iters += sol.iterations;
        if (sol.status != LpStatus::optimal) continue;
        if (have_incumbent &&
            sol.objective >= incumbent.objective - 1e-12 * std::max(1.0, std::fabs(incumbent.objective)))
            continue;
        SosCheck chk = check_sos(sets, node.win, sol.x, ztol);
        if (chk.feasible) {
            incumbent = sol;
            have_incumbent = true;
            continue;
        }
        Windows l = node.win, r = node.win;
        l[chk.branch_set].second = chk.split;
        r[chk.branch_set].first = chk.split;
        open.push({sol.objective, std::move(l)});
        open.push({sol.objective, std::move(r)});
    }

    if (!have_incumbent) {
        LpSolution fail;
        fail.status = LpStatus::infeasible;
        fail.bb_nodes = nodes;
        fail.iterations = total_iters;
        return fail;
    }
    incumbent.bb_nodes = nodes;
    incumbent.iterations = total_iters;
    return incumbent;
}

bool is_convex_curve(std::span<const double> values, const PeakGrid& grid) {
    if (static_cast<int>(values.size()) != grid.size())
        throw std::invalid_argument("is_convex_curve: values/grid length mismatch");
    double prev = -kInf;
    for (int i = 0; i + 1 < grid.size(); ++i) {
        const double s = (values[i + 1] - values[i]) / (grid.points[i + 1] - grid.points[i]);
        if (s < prev - 1e-9) return false;
        prev = s;
    }
    return true;
}

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string vname(const LpModel& m, int j) {
    if (j < static_cast<int>(m.var_names.size()) && !m.var_names[j].empty()) return m.var_names[j];
    return "x" + std::to_string(j);
}

}  // namespace

void write_lp_file(const LpModel& m, const std::vector<Sos2Set>& sets, std::ostream& os) {
    os << "\\ peakval model dump\n";
    os << "Minimize\n obj:";
    bool any = false;
    for (int j = 0; j < m.num_vars(); ++j) {
        if (m.objective[j] == 0.0) continue;
        const double c = m.objective[j];
        os << (c < 0 ? " - " : (any ? " + " : " ")) << num(std::fabs(c)) << " " << vname(m, j);
        any = true;
    }
    if (!any) os << " 0 " << vname(m, 0);
    os << "\nSubject To\n";
    for (int r = 0; r < m.num_rows(); ++r) {
        const auto& row = m.rows[r];
        os << " " << (row.name.empty() ? "c" + std::to_string(r) : row.name) << ":";
        bool first = true;
        for (auto [j, v] : row.coeffs) {
            os << (v < 0 ? " - " : (first ? " " : " + ")) << num(std::fabs(v)) << " " << vname(m, j);
            first = false;
        }
        const char* rel = row.sense == Sense::le ? "<=" : row.sense == Sense::ge ? ">=" : "=";
        os << " " << rel << " " << num(row.rhs) << "\n";
    }
    os << "Bounds\n";
    for (int j = 0; j < m.num_vars(); ++j) {
        const double lo = m.lower[j], hi = m.upper[j];
        if (lo == hi) {
            os << " " << vname(m, j) << " = " << num(lo) << "\n";
        } else if (!std::isfinite(lo) && !std::isfinite(hi)) {
            os << " " << vname(m, j) << " free\n";
        } else if (!std::isfinite(hi)) {
            os << " " << vname(m, j) << " >= " << num(lo) << "\n";
        } else if (!std::isfinite(lo)) {
            os << " -inf <= " << vname(m, j) << " <= " << num(hi) << "\n";
        } else {
            os << " " << num(lo) << " <= " << vname(m, j) << " <= " << num(hi) << "\n";
        }
    }
    if (!sets.empty()) {
        os << "SOS\n";
        for (size_t k = 0; k < sets.size(); ++k) {
            os << " s" << k << ": S2 ::";
            for (size_t p = 0; p < sets[k].vars.size(); ++p)
                os << " " << vname(m, sets[k].vars[p]) << " : " << (p + 1);
            os << "\n";
        }
    }
    os << "End\n";
}

void write_lp_file(const LpModel& m, const std::vector<Sos2Set>& sets, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write lp file: " + path);
    write_lp_file(m, sets, out);
}

}  // namespace peakval::lp
