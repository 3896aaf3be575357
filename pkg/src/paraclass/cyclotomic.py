"""Cyclotomic modules A = Z[zeta_n]: residual nilpotence and the n = 23 witness."""
from __future__ import annotations

from dataclasses import dataclass

from .class_group import imag_form_class_number, is_prime_power
from .ideals import ideal_from_generators, is_principal, principal_ideal, unit_ideal
from .laurent import cyclotomic_poly, lp_eval
from .para_class import is_s_fractional, s_fractional_witness
from .published import CYCLOTOMIC_PID_BOUND, cyclotomic_count
from .quad_order import RingElement, W, maximal_order


@dataclass(frozen=True)
class CycloReport:
    n: int
    phi_at_one: int
    residually_nilpotent: bool
    prime_power: bool
    pid_known: bool | None
    para_class_count: int | None
    count_source: str | None
    witness: dict | None = None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "phi_at_one": self.phi_at_one,
            "residually_nilpotent": self.residually_nilpotent,
            "prime_power": self.prime_power,
            "agrees_with_prime_power_test": self.residually_nilpotent == self.prime_power,
            "pid_known": self.pid_known,
            "para_class_count": self.para_class_count,
            "count_source": self.count_source,
            "witness": self.witness,
        }


def cyclo_res_nilpotent(n: int) -> CycloReport:
    """zeta_n - 1 is a non-unit iff |Phi_n(1)| != 1; that decides residual nilpotence."""
    if n < 2:
        raise ValueError("n must be >= 2")
    v = int(lp_eval(cyclotomic_poly(n), 1))
    pp = is_prime_power(n)
    count = cyclotomic_count(n)
    witness = cyclo23_witness().to_dict() if n == 23 else None
    return CycloReport(
        n,
        v,
        abs(v) != 1,
        pp,
        True if n < CYCLOTOMIC_PID_BOUND else None,
        count,
        "paper_sourced" if count is not None else None,
        witness,
    )


@dataclass
class Cyclo23Witness:
    class_number: int
    ideal_hnf: tuple
    principal: bool
    norm_two_solutions: list
    aug_hnf: tuple
    s_fractional: bool
    s_element: RingElement | None
    unit_ideal_principal: bool
    note: str

    @property
    def passed(self) -> bool:
        return (
            self.class_number == 3
            and not self.principal
            and not self.norm_two_solutions
            and self.s_fractional
            and self.unit_ideal_principal
        )

    def to_dict(self) -> dict:
        return {
            "class_number": self.class_number,
            "ideal": list(self.ideal_hnf),
            "principal": self.principal,
            "norm_pm2_solutions": self.norm_two_solutions,
            "aug_ideal": list(self.aug_hnf),
            "s_fractional": self.s_fractional,
            "s_element": [self.s_element.x, self.s_element.y] if self.s_element else None,
            "unit_ideal_principal": self.unit_ideal_principal,
            "note": self.note,
            "passed": self.passed,
        }


def cyclo23_witness(search: int = 12) -> Cyclo23Witness:
    """The ideal (2, (1 + sqrt(-23))/2) in the quadratic subfield of Q(zeta_23).

    zeta_23 - 1 lies over the ramified prime 23, whose prime in the subfield is
    (sqrt(-23)) = (2w - 1); an ideal coprime to it meets 1 + (t - 1).
    """
    R = maximal_order(-23)  # Z[w], w^2 - w + 6 = 0
    J = ideal_from_generators(R, [RingElement(2, 0), W])
    aug = principal_ideal(R, RingElement(-1, 2))
    sols = [
        (x, y)
        for x in range(-search, search + 1)
        for y in range(-search, search + 1)
        if abs(R.norm(RingElement(x, y))) == 2
    ]
    return Cyclo23Witness(
        class_number=imag_form_class_number(R.disc),
        ideal_hnf=J.hnf_tuple(),
        principal=is_principal(J).principal,
        norm_two_solutions=sols,
        aug_hnf=aug.hnf_tuple(),
        s_fractional=is_s_fractional(J, aug=aug),
        s_element=s_fractional_witness(J, aug=aug),
        unit_ideal_principal=is_principal(unit_ideal(R)).principal,
        note=(
            "Non-principality is certified in the quadratic subfield Q(sqrt -23); "
            "that it persists in Z[zeta_23] is quoted from the published argument, not computed."
        ),
    )
