#pragma once

#include <optional>
#include <string>
#include <vector>

#include "toridouble/ddouble.hpp"
#include "toridouble/lattice.hpp"
#include "toridouble/torus.hpp"

namespace toridouble {

enum class BraneKind { graph, fiber, coisotropic, general };

std::string to_string(BraneKind k);

// Affine rational subtorus {offset + U t} with connection
//   nabla = d + 2 pi i (t^T N dt + phi^T dt)
// in support coordinates t, and sign-structure bits on the generators.
class Brane {
public:
    // Supports are canonicalized (U^T in row Hermite form) and the connection
    // data are carried along. Throws InvalidBrane / InvalidXi / ShapeMismatch.
    static Brane make(const IntMatrix& support, const RatVector& offset, const RatMatrix& n_quad, const RatVector& phi,
                      std::vector<int> xi_bits = {}, BraneKind kind = BraneKind::general);

    const IntMatrix& support() const { return support_; }
    const RatVector& offset() const { return offset_; }
    const RatMatrix& conn_quadratic() const { return n_; }
    const RatVector& conn_flat() const { return phi_; }
    const std::vector<int>& xi_bits() const { return bits_; }
    BraneKind kind() const { return kind_; }
    std::size_t ambient_dim() const { return support_.rows(); }
    std::size_t dim() const { return support_.cols(); }

    // D for graph branes {theta = -D r}
    const std::optional<IntMatrix>& graph_matrix() const { return graph_d_; }
    // true for branes living on a doubled torus produced by lift()
    bool is_lift() const { return lifted_; }

    // F = N^T - N as a form on support coordinates
    RatMatrix curvature() const;
    bool has_integral_curvature() const;
    // bits·gamma + sum_{i<j} gamma_i gamma_j F_ij mod 2; throws InvalidXi if F is not integral
    int xi(const IntVector& gamma) const;
    // same quadratic rule with all bits zero
    int xi0(const IntVector& gamma) const;

    Brane with_xi(std::vector<int> bits) const;
    Brane translated(const RatVector& shift) const;
    RatVector point(const RatVector& t) const;

private:
    friend struct BraneAccess;
    IntMatrix support_;
    RatVector offset_;
    RatMatrix n_;
    RatVector phi_;
    std::vector<int> bits_;
    BraneKind kind_ = BraneKind::general;
    std::optional<IntMatrix> graph_d_;
    bool lifted_ = false;
};

struct ValidationReport {
    bool pass = true;
    std::vector<std::string> failures;
};

// {theta = -D r}, N = -1/2 (Re tau D - D^T Re tau^T), phi = 0
Brane graph_brane(const TorusWithBField& t, const IntMatrix& d, std::vector<int> xi_bits = {});
Brane zero_section(const TorusWithBField& t);
// {r = r0} x T_theta with nabla = d + 2 pi i phi dtheta
Brane fiber_brane(const TorusWithBField& t, const RatVector& r0, const RatVector& phi, std::vector<int> xi_bits = {});
// standard T^4 (omega = dr∧dtheta), C = T, nabla = d + 2 pi i (r1 dtheta2 - r2 dtheta1)
TorusWithBField standard_t4();
Brane ko_brane();

ValidationReport validate_lagrangian(const Brane& l, const TorusWithBField& t);
ValidationReport validate_coisotropic(const Brane& c, const TorusWithBField& t);

struct Holonomy {
    Rational turns;  // value = exp(2 pi i turns), turns in [0, 1)
    CxD value() const;
};

// (-1)^{xi(gamma)} hol(gamma) at base point t: the transition function times
// exp of the connection integral along t -> t + gamma.
Holonomy holonomy(const Brane& l, const IntVector& gamma, const RatVector& base);
// Line-bundle transition g_gamma(t) = (-1)^{xi0(gamma)} e^{-pi i g^T N g} e^{-2 pi i g^T N t}
Holonomy transition_factor(const Brane& l, const IntVector& gamma, const RatVector& base);

struct LiftedBrane {
    Brane brane;            // on the doubled torus, structural frame
    Brane base;             // the brane that was lifted
    IntMatrix right_inverse;  // V with U^T V = Id used to place the offset
};

LiftedBrane lift(const Brane& cb, const TorusWithBField& t);

bool verify_lift_lagrangian(const Brane& lb, const DoubledTorus& dt);
bool verify_lift_complex(const Brane& lb, const DoubledTorus& dt);
inline bool verify_lift_lagrangian(const LiftedBrane& lb, const DoubledTorus& dt) {
    return verify_lift_lagrangian(lb.brane, dt);
}
inline bool verify_lift_complex(const LiftedBrane& lb, const DoubledTorus& dt) { return verify_lift_complex(lb.brane, dt); }

// equal as subsets of the torus
bool same_subtorus(const Brane& a, const Brane& b);
// image under a linear automorphism of the ambient lattice (e.g. syz_frame_map)
Brane transform_support(const Brane& b, const RatMatrix& map);

// nabla ⊗ nabla_0|_L with nabla_0 = d - 2 pi i (r dr_hat + theta dtheta_hat),
// whose curvature is 2 sigma_0; the result lives on (T x T^v, Omega, -sigma_0).
Brane twist_brane(const Brane& lb, const DoubledTorus& dt);

// restriction of an ambient 2-form to the brane's support coordinates
RatMatrix restrict_form(const Brane& b, const RatMatrix& form);

}  // namespace toridouble
