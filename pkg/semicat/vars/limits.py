"""Default search and enumeration limits for semicat."""

DEFAULT_LIMITS = {
    # Exhaustive searches
    "max_order": 12,  # Largest semigroup handed to the brute-force isomorphism oracle
    "max_isomorphisms": 100_000,  # Most distinct maps a structured enumeration may return
    # Orbit counting
    "max_tuples": 10**6,  # Largest tuple space scanned by union-find orbit counting
    "orbit_length": 3,  # Default n_max for oligomorphy profiles
    # Psi-systems
    "max_choices": 200_000,  # Most (pi, phi_1, ..., phi_r) choice tuples checked for the Psi-system extension condition
    # Verification suites
    "oracle_order": 72,  # Brute-force bound inside `semicat verify`; the order-65 truncations must fit
}
