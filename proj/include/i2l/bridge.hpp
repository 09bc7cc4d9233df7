#pragma once

#include "i2l/finset.hpp"
#include "i2l/groupoid.hpp"
#include "i2l/inv2link.hpp"
#include "i2l/report.hpp"

#include <optional>
#include <stdexcept>
#include <variant>

namespace i2l {

/// Contracts a validated groupoid to its involutive-2-link: m is kept,
/// theta := <i.pi1, m> and phi := <m, i.pi2> through the composable-pairs
/// pullback. The result satisfies m.phi = pi1, m.theta = pi2, pi1.phi = m,
/// pi1.theta = i.pi1, pi2.phi = i.pi2, pi2.theta = m.
Inv2Link to_link(const InternalGroupoid& g);

/// Verdict names of a classification, in report order:
///   pair_m_mtheta_jointly_mono, pair_m_mphi_jointly_mono,
///   sections_exist, fixed_sections_exist, e1_e2_unique,
///   inverse_routes_agree, unit_cocone_agrees,
///   absorption_theta, absorption_phi,
///   biexact_mphi_mtheta, m1_m2_cone_equations, mm1_equals_mm2
struct Classification {
    Report report;
    std::optional<FinMap> e1, e2;              // C1 -> C2 when determined
    std::optional<BiexactCompletion> completion;

    bool is_groupoid() const { return report.passed(); }
};

/// Decides whether a link is (the image of) an internal groupoid. Sections
/// e1, e2 are determined per element from the fibers of m fixed by phi
/// (resp. theta), backtracking over any ambiguous candidates against the
/// global equations; the pair (m.phi, m.theta) is completed bi-exactly;
/// and the outer associativity law m.m1 = m.m2 is checked on the completed
/// triple object. All failures are verdicts with witnesses, never throws.
Classification classify(const Inv2Link& link);

/// Raised when a passing classification assembles a structure that fails
/// the groupoid validator. Reaching this would contradict the sufficiency
/// of the classification conditions, so it is loud and carries evidence.
class TheoremPostcheckError : public std::logic_error {
public:
    explicit TheoremPostcheckError(Report report);
    const Report& report() const { return report_; }

private:
    Report report_;
};

/// Reconstructs the groupoid of a classified link: pi1 := m.phi,
/// pi2 := m.theta, (C0, d, c) from the bi-exact completion,
/// i := m.theta.phi.e2, and e induced through the pushout from the cocone
/// (m.theta.e1, m.phi.e2). The result is re-validated before returning.
std::variant<InternalGroupoid, Classification> to_groupoid(const Inv2Link& link);

/// Beck contractibility of the pairs (m, m.theta) and (m, m.phi): searches
/// for common sections e1, e2 of m with m.theta.e1.m = m.theta.e1.m.theta
/// (and the phi twin). Groupoid-derived links admit e1 = <1, ed>,
/// e2 = <ec, 1>.
struct Contractibility {
    Report report; // verdicts contractible_pair_m_mtheta / _m_mphi
    std::optional<FinMap> e1, e2;
};
Contractibility contractibility_check(const Inv2Link& link);

/// Lifts a C1-level map to a functor exactly when the associated links
/// admit an induced fbar; f0 is then induced through the pushout property
/// of the d-c square and the unit/inverse compatibilities are verified.
std::optional<GroupoidFunctor>
induce_functor_images(const InternalGroupoid& source, const InternalGroupoid& target,
                      const FinMap& f1);

} // namespace i2l
