#include "tfc/descent.hpp"

#include "tfc/errors.hpp"

namespace tfc {

namespace {

CoeffResult scaled(CoeffResult r, const CentralizerClass& sigma) {
    const double factor = sigma.eps_flag / double(sigma.iota_order);
    r.value = 0;
    r.error = 0;
    for (auto& t : r.terms) {
        t.factors.push_back({"eps^G(sigma)/|iota^G(sigma)|", factor});
        t.value *= factor;
        t.error *= factor;
        r.value += t.value;
        r.error += t.error;
    }
    r.provenance = "descent from " + sigma.centralizer_tag + ": " + r.provenance;
    return r;
}

}  // namespace

CoeffResult descent_coeff(const CentralizerClass& sigma, const CentralizerUnipotent& u, const PlaceSet& S,
                          const CoeffConfig& config) {
    if (sigma.iota_order < 1) throw DomainError("iota order must be positive");
    switch (sigma.sigma_kind) {
        case SigmaKind::Z:
            if (!u.orbit) throw DomainError("sigma central: pass a unipotent orbit of G");
            return scaled(coeff_orbit(S, *u.orbit, config), sigma);
        case SigmaKind::Sigma1:
            return scaled(centralizer_example_coeff(ExampleFamily::GL2xGL2, u.example, S, config), sigma);
        case SigmaKind::Sigma2:
        case SigmaKind::Sigma3: {
            if (sigma.eps_flag != 0) throw DomainError("sigma2 and sigma3 have a split center larger than A_G");
            CoeffResult r;
            CoeffTerm t;
            t.prefactor = 0;
            t.volume_symbol = "vol_calG";
            t.volume = config.vol.vol_G;
            t.factors.push_back({"eps^G(sigma)", 0.0});
            r.terms.push_back(t);
            r.provenance = "descent from " + sigma.centralizer_tag + ": eps^G(sigma) = 0";
            return r;
        }
        case SigmaKind::Sigma4:
            throw NotImplemented("centralizer " + sigma.centralizer_tag +
                                 " needs quadratic characters of E; no coefficient formula is implemented");
        case SigmaKind::Sigma5: {
            ExampleParams p = u.example;
            const Integer d = squarefree_kernel(sigma.sigma.alpha);
            p.d = to_i64(d);
            return scaled(centralizer_example_coeff(ExampleFamily::U11, p, S, config), sigma);
        }
        case SigmaKind::Sigma6:
            throw NotImplemented("centralizer " + sigma.centralizer_tag + " has no implemented coefficient formula");
    }
    throw DomainError("unknown sigma kind");
}

}  // namespace tfc
