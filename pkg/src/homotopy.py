"""
Homotopy Invariants - first Chern class and d3 of a surgered contact structure

c1 is the class of the rotation vector in coker(M), M the linking matrix.
d3 = (c^2 - 3·sigma - 2·chi) / 4 + q with c^2 = a·rot where M·a = rot,
sigma the signature of M, chi = 1 + #components and q = #(+1)-surgeries.
"""

from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict

from .errors import DegenerateMatrix, DimensionMismatch
from .exactlinalg import determinant, mat_vec, signature_symmetric, smith_normal_form, solve_rational
from .surgery import ContactCoefficient, SurgeryPresentation


class ChernClass(BaseModel):
    """A cokernel element in Smith coordinates.

    factors are the nontrivial invariant factors of H_1 (0 = free summand);
    coordinates[k] is reduced mod factors[k] when that factor is finite.
    meridians holds the class of every meridian mu_i in the same basis.
    """

    model_config = ConfigDict(frozen=True)

    factors: Tuple[int, ...]
    coordinates: Tuple[int, ...]
    meridians: Tuple[Tuple[int, ...], ...] = ()

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    @property
    def order(self) -> Optional[int]:
        """Order of the class, None when it has infinite order."""
        result = 1
        for d, c in zip(self.factors, self.coordinates):
            if d == 0:
                if c != 0:
                    return None
                continue
            k = d // gcd(c, d)
            result = result * k // gcd(result, k)
        return result

    def to_dict(self) -> Dict[str, List[int]]:
        return {"factors": list(self.factors), "coordinates": list(self.coordinates)}


class D3Value(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    value: Fraction
    c_squared: Fraction
    solution: Tuple[Fraction, ...]  # M·a = rot
    signature: int
    euler: int
    q: int

    def __str__(self) -> str:
        return format_rational(self.value)


D3Like = Union[D3Value, Fraction, int]


def format_rational(x: Union[Fraction, int]) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _value(x: D3Like) -> Fraction:
    return x.value if isinstance(x, D3Value) else Fraction(x)


class _Coker:
    """Reduction of integer vectors into Smith coordinates of coker(M)."""

    def __init__(self, M: Sequence[Sequence[int]]):
        n = len(M)
        self.n = n
        if n == 0:
            self.U: Tuple[Tuple[int, ...], ...] = ()
            self.keep: List[Tuple[int, int]] = []
            return
        snf = smith_normal_form(M)
        self.U = snf.U
        diag = list(snf.diagonal) + [0] * (n - len(snf.diagonal))
        self.keep = [(k, d) for k, d in enumerate(diag) if d != 1]

    @property
    def factors(self) -> Tuple[int, ...]:
        return tuple(d for _, d in self.keep)

    def reduce(self, v: Sequence[int]) -> Tuple[int, ...]:
        if len(v) != self.n:
            raise DimensionMismatch(f"vector of length {len(v)} for {self.n} components")
        y = mat_vec(self.U, [int(x) for x in v])
        return tuple(y[k] % d if d else y[k] for k, d in self.keep)


def chern_class(pres: SurgeryPresentation) -> ChernClass:
    coker = _Coker(pres.linking.rows())
    n = len(pres.components)
    meridians = tuple(coker.reduce([1 if k == i else 0 for k in range(n)]) for i in range(n))
    return ChernClass(factors=coker.factors, coordinates=coker.reduce(pres.rotations), meridians=meridians)


def homology_class(pres: SurgeryPresentation, linking_vector: Sequence[int]) -> ChernClass:
    """Class of a knot disjoint from the surgery link: sum of lk(K, L_i)·mu_i."""
    coker = _Coker(pres.linking.rows())
    return ChernClass(factors=coker.factors, coordinates=coker.reduce(linking_vector))


def d3(pres: SurgeryPresentation) -> D3Value:
    M = pres.linking.rows()
    n = len(M)
    if determinant(M) == 0:
        raise DegenerateMatrix("linking matrix is singular; d3 needs a rational homology sphere")
    a = solve_rational(M, pres.rotations)
    c2 = sum((a[i] * pres.rotations[i] for i in range(n)), Fraction(0))
    sigma = signature_symmetric(M)
    chi = 1 + n
    q = sum(1 for c in pres.components if c.coefficient == ContactCoefficient.PLUS)
    value = (c2 - 3 * sigma - 2 * chi) / 4 + q
    return D3Value(value=value, c_squared=c2, solution=tuple(a), signature=sigma, euler=chi, q=q)


def relative_d3(d_first: D3Like, d_second: D3Like) -> Fraction:
    """d3(first, second) = d3(second) - d3(first)."""
    return _value(d_second) - _value(d_first)


def connected_sum_d3(d_a: D3Like, d_b: D3Like) -> Fraction:
    # a bare Fraction: the summed value has no single linking matrix to carry c^2, sigma, chi, q
    return _value(d_a) + _value(d_b) + Fraction(1, 2)


def rational_invariants(
    pres: SurgeryPresentation,
    linking_vector: Sequence[int],
    tb: int,
    rot: int,
) -> Tuple[Fraction, Fraction]:
    """tb and rot of a knot after surgery on the presentation.

    With v its linking vector, H the linking matrix and rho the rotation
    vector: tb_Q = tb - v·H^-1·v and rot_Q = rot - rho·H^-1·v.
    """
    v = [int(x) for x in linking_vector]
    if len(v) != len(pres.components):
        raise DimensionMismatch(f"linking vector of length {len(v)} for {len(pres.components)} components")
    x = solve_rational(pres.linking.rows(), v)
    if x is None:
        raise DegenerateMatrix("rational invariants need a nonsingular linking matrix")
    tb_q = Fraction(tb) - sum((v[i] * x[i] for i in range(len(v))), Fraction(0))
    rot_q = Fraction(rot) - sum((pres.rotations[i] * x[i] for i in range(len(v))), Fraction(0))
    return tb_q, rot_q
