#include "hcsp/base.hpp"

namespace hcsp {

BaseStructure BaseStructure::henson(int n) {
    if (n == kOmega || n < 3)
        throw InputError("henson base requires a finite clique bound n >= 3");
    BaseStructure b;
    b.kind = Kind::Henson;
    b.n = n;
    return b;
}

BaseStructure BaseStructure::equiv(int n, int s) {
    const bool n_inf = is_omega(n);
    const bool s_inf = is_omega(s);
    if (n_inf && s_inf)
        throw DelegatedBaseError(
            "equivalence base with infinitely many infinite classes is delegated to prior work");
    if ((n_inf && s == 1) || (s_inf && n == 1))
        throw DelegatedBaseError(
            "equivalence base with n=1 or s=1 collapses to equality and is delegated to prior work");
    if (!n_inf && !s_inf)
        throw InputError("equivalence base requires exactly one of n, s to be omega");
    if ((!n_inf && n < 2) || (!s_inf && s < 2))
        throw InputError("equivalence base requires the finite parameter to be >= 2");
    BaseStructure b;
    b.kind = Kind::Equiv;
    b.n = n;
    b.s = s;
    return b;
}

BaseStructure BaseStructure::equality() {
    BaseStructure b;
    b.kind = Kind::Equality;
    return b;
}

std::string BaseStructure::describe() const {
    auto p = [](int v) { return is_omega(v) ? std::string("omega") : std::to_string(v); };
    switch (kind) {
        case Kind::Henson: return "henson(" + std::to_string(n) + ")";
        case Kind::Equiv: return "equiv(" + p(n) + "," + p(s) + ")";
        case Kind::Equality: return "equality";
    }
    return "?";
}

}  // namespace hcsp
