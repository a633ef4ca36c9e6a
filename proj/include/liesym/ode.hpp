#ifndef LIESYM_ODE_HPP
#define LIESYM_ODE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace liesym {

struct OdeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using OdeRhs = std::function<void(double t, const std::vector<double>& y,
                                  std::vector<double>& dy)>;

/// Accepted steps of an adaptive integration: nodes with states and slopes.
struct OdeSolution {
    std::vector<double> t;
    std::vector<std::vector<double>> y;
    std::vector<std::vector<double>> f;  // rhs at the nodes

    const std::vector<double>& back_state() const { return y.back(); }
};

/// Dormand-Prince 5(4) adaptive integration from t0 to t1.
OdeSolution integrate_adaptive(const OdeRhs& rhs, std::vector<double> y0,
                               double t0, double t1, double rtol = 1e-10,
                               double atol = 1e-12);

/// Dense evaluation of the first component of a companion-form system
/// (y = (u, u', u'', ...)): two-point quintic Hermite built from the value
/// and first two derivatives carried in the state itself.
class DenseSolution {
  public:
    DenseSolution(OdeSolution sol, int order);

    double t_min() const { return asc_ ? sol_.t.front() : sol_.t.back(); }
    double t_max() const { return asc_ ? sol_.t.back() : sol_.t.front(); }

    /// u^(deriv)(t); deriv + 2 must be available from state + slopes.
    double eval(double t, int deriv = 0) const;

  private:
    OdeSolution sol_;
    int order_;
    bool asc_;
    double node_value(int node, int deriv) const;
};

}  // namespace liesym

#endif
