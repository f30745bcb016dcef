"""Catalogue of the verification suites run by ``semicat verify``."""

SUITES = {
    "iso-theorem": "Structured Rees isomorphism enumeration equals the brute-force oracle",
    "calculus": "Composition and inversion of quadruples agree with maps pointwise",
    "idempotents": "The idempotent formula equals the x*x = x scan",
    "orthodoxy": "Orthodox iff normalized entries are trivial and every component is complete",
    "normalization": "Graham normal forms are isomorphic and trivial on the spanning forest",
    "orbits": "Burnside and union-find orbit counts agree",
    "strong-semilattice": "Accepted automorphism data are exactly the multiplicative flat maps",
    "purity": "Small Clifford semigroups and normal bands are automorphism-pure; impure witnesses complete Aut",
    "psi-system": "Component Psi-systems and maximal subgroup pivots pass their checks",
    "rb-extension": "Rectangular band extensions fix every subband and extend the matching",
    "counterexample": "Isomorphism pattern of the truncated diagonal family, computed two ways",
}

# Suites run by `verify all`, in order
ALL_SUITES = tuple(SUITES)
