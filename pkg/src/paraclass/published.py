"""Published reference values, kept separate from anything computed.

These are never overwritten by computed results; the scan and the reports
compare against them and surface every disagreement with a certificate.
"""
from .class_group import is_prime_power

# squarefree d < 100 for which the ring of integers of Q(sqrt d) is listed as Z[u, 1/u]
LAURENT_D = (2, 3, 10, 13, 15, 23, 26, 29, 35, 53, 77, 82, 85)
# the listed Laurent d whose coordinate ring is a principal ideal domain
PID_D = (2, 3, 13, 23, 29, 53, 77)
# listed class numbers among the Laurent d
TWO_CLASSES_D = (10, 15, 26, 35, 85)
CYCLIC_FOUR_D = (82,)
SCAN_BOUND = 100

# Z[zeta_n] is a principal ideal domain for n below this bound
CYCLOTOMIC_PID_BOUND = 23
# prime powers beyond the bound whose groups are still determined by their lower central quotients
CYCLOTOMIC_RIGID_EXTRA = (25, 27, 32)


def published_class_order(d: int):
    if d in PID_D:
        return 1
    if d in TWO_CLASSES_D:
        return 2
    if d in CYCLIC_FOUR_D:
        return 4
    return None


def cyclotomic_count(n: int):
    """Published count of para-classes for T ⋉ Z[zeta_n], when one is stated."""
    if is_prime_power(n) and (n < CYCLOTOMIC_PID_BOUND or n in CYCLOTOMIC_RIGID_EXTRA):
        return 1
    return None
