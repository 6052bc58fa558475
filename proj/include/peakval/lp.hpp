#pragma once

#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "peakval/errors.hpp"
#include "peakval/model.hpp"

namespace peakval::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : char { le = '<', eq = '=', ge = '>' };

/// Minimization LP over box-bounded variables with sparse constraint rows.
struct LpModel {
    struct Row {
        std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
        Sense sense = Sense::eq;
        double rhs = 0.0;
        std::string name;
    };

    std::vector<double> lower, upper, objective;
    std::vector<Row> rows;
    std::vector<std::string> var_names;

    int num_vars() const { return static_cast<int>(lower.size()); }
    int num_rows() const { return static_cast<int>(rows.size()); }

    int add_var(double lb, double ub, double obj, std::string name = "");
    void add_row(Sense sense, double rhs, std::vector<std::pair<int, double>> coeffs,
                 std::string name = "");

    /// Throws std::invalid_argument on crossed bounds or out-of-range indices.
    void check() const;
};

/// One SOS-2 family: at most two members nonzero and those two adjacent in order.
struct Sos2Set {
    std::vector<int> vars;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    double objective = std::numeric_limits<double>::quiet_NaN();
    std::vector<double> x;
    std::vector<double> row_activity;
    int iterations = 0;
    int bb_nodes = 0;  // branch-and-bound nodes solved (1 when no branching)
};

struct SolverOptions {
    double feas_tol = 1e-7;  // absolute bound/row feasibility
    double opt_tol = 1e-6;   // relative optimality
    int bland_factor = 10;   // switch to Bland's rule after bland_factor*(rows+cols) iterations
    int cap_factor = 50;     // hard iteration cap at cap_factor*(rows+cols)
};

/// Bounded-variable primal simplex; terminates at a refactorized vertex.
/// Throws NumericalError past the iteration cap or on an unrecoverable basis.
LpSolution solve_lp(const LpModel& m, const SolverOptions& opts = {});

/// Branch-and-bound over SOS-2 sets (best-bound node order, weighted-center split).
/// Set members must be bounded within [0, 1].
LpSolution solve_sos2(const LpModel& m, const std::vector<Sos2Set>& sets,
                      const SolverOptions& opts = {});

/// True iff successive slopes of (grid, values) are non-decreasing within 1e-9.
bool is_convex_curve(std::span<const double> values, const PeakGrid& grid);

/// Plain-text dump in LP interchange format (Minimize / Subject To / Bounds / SOS / End).
void write_lp_file(const LpModel& m, const std::vector<Sos2Set>& sets, std::ostream& os);
void write_lp_file(const LpModel& m, const std::vector<Sos2Set>& sets, const std::string& path);

}  // namespace peakval::lp
