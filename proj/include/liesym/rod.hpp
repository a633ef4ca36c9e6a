#ifndef LIESYM_ROD_HPP
#define LIESYM_ROD_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "liesym/ode.hpp"
#include "liesym/symmetry.hpp"
#include "liesym/verify.hpp"

namespace liesym {

/// Structured forms of the coefficient kappa(x) driving the rod
/// classification.  Shifted profiles f are one-variable expressions in
/// var 1.  The B-shaped forms reference the ratio chi12/chi22 and the
/// C-shaped forms chi11/chi12 of the owning equation.
struct KappaForm {
    enum class Tag {
        Zero,
        Constant,       // kappa0
        Ridge,          // f(beta2 x1 - beta1 x2)
        InvSquareTime,  // kappa0 (beta + x2)^{-2}
        QuarticRidgeB,  // kappa0 (beta + x1 - (chi12/chi22) x2)^{-4}
        SimilarityB,    // (beta2+x2)^{-2} f((beta2+x2)^{-1/2}(beta1+x1-(chi12/chi22)x2))
        PowFourThirds,  // kappa0 (beta + x2)^{-4/3}
        QuarticRidgeC,  // kappa0 (beta + 2x1 - (chi11/chi12) x2)^{-4}
        SimilarityC,    // (beta2+x2)^{-4/3} f((beta2+x2)^{-1/3}(beta1+2x1-(chi11/chi12)x2))
        General,        // arbitrary expression, kernel-only classification
    };

    Tag tag = Tag::Zero;
    double kappa0 = 0.0;
    double beta = 0.0;
    double beta1 = 0.0, beta2 = 0.0;
    Expr f;        // profile for Ridge / SimilarityB / SimilarityC
    Expr general;  // General

    static KappaForm zero() { return {}; }
    static KappaForm constant(double k0);
    static KappaForm ridge(double b1, double b2, Expr profile);
    static KappaForm inv_square_time(double k0, double b);
    static KappaForm quartic_ridge_b(double k0, double b);
    static KappaForm similarity_b(double b1, double b2, Expr profile);
    static KappaForm pow_four_thirds(double k0, double b);
    static KappaForm quartic_ridge_c(double k0, double b);
    static KappaForm similarity_c(double b1, double b2, Expr profile);
    static KappaForm general_form(Expr kappa);

    /// Collapses degenerate profiles: Ridge with constant f to Constant /
    /// Zero, Similarity forms with f constant or f = kappa0 y^{-4} to
    /// their ridge / power counterparts.  Detection is by sampled
    /// evaluation of the profile.
    KappaForm normalize() const;
};

struct RodEquation {
    double gamma = 1.0;
    double chi11 = 0.0, chi12 = 0.0, chi22 = 0.0;
    KappaForm kappa;

    void validate() const;  // gamma != 0, (chi12)^2 + (chi22)^2 != 0
    double det_chi() const { return chi11 * chi22 - chi12 * chi12; }

    Expr kappa_expr() const;
    Operator4 op() const;
};

struct RodGenerators {
    VectorField Y1, Y2;
    std::optional<VectorField> Y3;  // requires chi22 != 0
    std::optional<VectorField> Y4;  // requires chi12 != 0
};

RodGenerators builtin_generators(const RodEquation& eq);

enum class VariationalTag { AsIs, NeedsHalfX0 };

struct TaggedGenerator {
    std::string label;
    VectorField X;
    VariationalTag variational = VariationalTag::AsIs;

    /// The variational representative (X, or X + (1/2) X0 when tagged).
    VectorField variational_field() const;
};

struct ClassificationResult {
    char subclass = '?';  // 'A', 'B' or 'C'
    int table_row = 0;    // 1..11; 0 = kernel-only
    std::vector<TaggedGenerator> generators;
    std::string note;
};

/// Table-driven group classification from the declared kappa tag and the
/// signs of chi22 and det(chi).  General kappa yields kernel-only with an
/// explicit escape-hatch note.
ClassificationResult rod_classify(const RodEquation& eq);

struct RodCurrents {
    CurrentPair B1, B2;
    std::optional<CurrentPair> B3, B4;
};

/// The differential functions B_(1) .. B_(4) printed before Table 2.
RodCurrents conserved_currents_catalog(const RodEquation& eq);

/// The conservation laws of the classified row as labelled combinations
/// of the catalog currents.
std::vector<std::pair<std::string, CurrentPair>> table2_laws(
    const RodEquation& eq);

/// P_(u)^a = chi^{am}(u w_m - u,_m w)
///         + d^{1a} gamma (u w_111 + u,_11 w_1 - u,_111 w - u,_1 w_11).
CurrentPair p_u_current(const RodEquation& eq, const Expr& u);

/// One row of the beam conservation-law table: density Psi, flux P and
/// the characteristic q with d Psi/d x2 + d P/d x1 = q D[w] exactly
/// (q = w_m xi^m - sigma w for the vector-field rows, q = u for the
/// solution rows).
struct Table3Entry {
    std::string label;
    VectorField generator;
    JetExpr Psi, P;
    JetExpr q;
};

/// The six conservation laws of the uniform beam gamma = EJ, chi22 = m.
std::vector<Table3Entry> beam_table3(double EJ, double m);

enum class ReductionKind { TravellingWave, Y3, Y4 };

struct ReductionSpec {
    ReductionKind kind = ReductionKind::TravellingWave;
    double c = 1.0;     // travelling wave speed
    int sign = +1;      // s = x1 + sign * c * x2
};

struct IncompatibleReduction : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ReducedODE {
    std::array<Expr, 5> coeff;  // of U'''', U''', U'', U', U in s = var 1
    Expr s_map;                 // s(x1, x2)
    std::string description;
    bool self_similar = false;  // Y3 with chi12 = 0 or Y4 with chi11 = 0
};

/// Builds the reduced fourth-order ODE for the requested invariant-
/// solution family; throws IncompatibleReduction when the kappa tag does
/// not admit the generator.
ReducedODE rod_reduce(const RodEquation& eq, const ReductionSpec& spec);

/// Residual of the lifted field w = U(s(x1, x2)) over the sample set;
/// U supplied in closed form.
VerifyReport lift_and_verify(const RodEquation& eq, const ReducedODE& red,
                             const Expr& U, const SampleSet& samples,
                             double tol = 1e-9);

/// Sampled variant: U given by dense ODE output (value and derivatives up
/// to fourth order); the lift uses the chain rule through the s-map.
VerifyReport lift_and_verify(const RodEquation& eq, const ReducedODE& red,
                             const std::function<double(double, int)>& U,
                             const SampleSet& samples, double tol = 1e-5);

}  // namespace liesym

#endif
