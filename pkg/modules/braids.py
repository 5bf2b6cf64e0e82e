"""Braid words with a central full-twist exponent and the endomorphisms
rho_m(s_i) = s_i T_N^m.

A braid is stored as a free word in s_1..s_{N-1} together with the power c
of the full twist T_N = (s_1 ... s_{N-1})^N. Since T_N is central every
identity checked here reduces to letter bookkeeping plus integer
arithmetic on c; no normal form for B_N is needed.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"^s(\d+)(?:\^\{?(-?\d+)\}?)?$")


def parse_letters(text: str) -> Tuple[int, ...]:
    """``"s1 s2^-1 s1^2"`` -> (1, -2, 1, 1); bare signed integers are accepted too"""
    letters: List[int] = []
    for token in text.replace(",", " ").split():
        match = _TOKEN.match(token)
        if match:
            index, power = int(match.group(1)), int(match.group(2) or 1)
            sign = 1 if power > 0 else -1
            letters.extend([sign * index] * abs(power))
            continue
        try:
            value = int(token)
        except ValueError as exc:
            raise ValueError(f"Invalid braid letter '{token}': expected s<i>, s<i>^k or a signed index") from exc
        if value == 0:
            raise ValueError("braid letter 0 does not exist")
        letters.append(value)
    return tuple(letters)


def free_reduce(letters: Iterable[int]) -> Tuple[int, ...]:
    stack: List[int] = []
    for a in letters:
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def cycle(N: int) -> Tuple[int, ...]:
    """s_1 s_2 ... s_{N-1}"""
    return tuple(range(1, N))


def full_twist(N: int) -> Tuple[int, ...]:
    return cycle(N) * N


def _invert(letters: Sequence[int]) -> Tuple[int, ...]:
    return tuple(-a for a in reversed(letters))


@dataclass(frozen=True)
class BraidWord:
    """letters * T_N^center_exp in B_strands"""

    strands: int
    letters: Tuple[int, ...] = ()
    center_exp: int = 0

    def __post_init__(self):
        if self.strands < 2:
            raise ValueError(f"braid groups need at least 2 strands, got {self.strands}")
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        bad = [a for a in self.letters if not 1 <= abs(a) <= self.strands - 1]
        if bad:
            raise ValueError(f"letters {bad} out of range for B_{self.strands}")

    @classmethod
    def parse(cls, strands: int, text: str, center_exp: int = 0) -> "BraidWord":
        return cls(strands, parse_letters(text), center_exp)

    @classmethod
    def twist(cls, strands: int, power: int = 1) -> "BraidWord":
        return cls(strands, (), power)

    def writhe(self) -> int:
        return writhe(self)

    def reduced(self) -> "BraidWord":
        return BraidWord(self.strands, free_reduce(self.letters), self.center_exp)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.strands, _invert(self.letters), -self.center_exp)

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise ValueError(f"cannot multiply B_{self.strands} by B_{other.strands}")
        return BraidWord(self.strands, self.letters + other.letters, self.center_exp + other.center_exp)

    def expand(self) -> Tuple[int, ...]:
        """Letters with the central factor written out, freely reduced"""
        twist = full_twist(self.strands)
        power = twist * self.center_exp if self.center_exp >= 0 else _invert(twist) * -self.center_exp
        return free_reduce(self.letters + power)

    def embed(self, strands: int) -> "BraidWord":
        """Image in B_strands on the first strands; the full twist is expanded first"""
        if strands < self.strands:
            raise ValueError(f"cannot embed B_{self.strands} into B_{strands}")
        if strands == self.strands:
            return self
        return BraidWord(strands, self.expand(), 0)

    def same_element(self, other: "BraidWord") -> bool:
        """Equal free-reduced letters and central exponents (sufficient, not necessary)"""
        return (
            self.strands == other.strands
            and free_reduce(self.letters) == free_reduce(other.letters)
            and self.center_exp == other.center_exp
        )

    def __str__(self) -> str:
        word = " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.letters) or "e"
        return f"{word} * T_{self.strands}^{self.center_exp}" if self.center_exp else word

    def to_dict(self) -> dict:
        return {
            "strands": self.strands,
            "word": " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in self.letters),
            "center_exp": self.center_exp,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BraidWord":
        return cls.parse(int(data["strands"]), data.get("word", ""), int(data.get("center_exp", 0)))


def writhe(gamma: BraidWord) -> int:
    """Image under s_i -> 1: signed letter count plus c * N(N-1)"""
    N = gamma.strands
    return sum(1 if a > 0 else -1 for a in gamma.letters) + gamma.center_exp * N * (N - 1)


def rho_endo(gamma: BraidWord, m: int) -> BraidWord:
    """gamma -> gamma * T_N^(m * writhe(gamma))"""
    return BraidWord(gamma.strands, gamma.letters, gamma.center_exp + m * writhe(gamma))


def compose_exponent(N: int, n1: int, n2: int) -> int:
    return n1 + n2 + n1 * n2 * N * (N - 1)


def compose_identity_check(gamma: BraidWord, n1: int, n2: int) -> bool:
    """rho_{n2} rho_{n1}(gamma) = gamma T_N^((n1 + n2 + n1 n2 N(N-1)) writhe(gamma))"""
    twice = rho_endo(rho_endo(gamma, n1), n2)
    closed = BraidWord(
        gamma.strands,
        gamma.letters,
        gamma.center_exp + compose_exponent(gamma.strands, n1, n2) * writhe(gamma),
    )
    ok = twice.letters == closed.letters and twice.center_exp == closed.center_exp
    if not ok:
        logger.warning(f"composition identity fails for {gamma}, n1={n1}, n2={n2}")
    return ok


def conjugation_equivariance_check(alpha: BraidWord, gamma: BraidWord, m: int) -> bool:
    """rho(alpha gamma alpha^-1) = alpha rho(gamma) alpha^-1"""
    lhs = rho_endo(alpha * gamma * alpha.inverse(), m)
    rhs = alpha * rho_endo(gamma, m) * alpha.inverse()
    return lhs.same_element(rhs)


def torus_word(a: int, b: int) -> BraidWord:
    """(s_1 ... s_{a-1})^b, whose closure is the torus link T(a, b)"""
    letters = cycle(a) * b if b >= 0 else _invert(cycle(a)) * -b
    return BraidWord(a, letters, 0)


@dataclass
class TorusKnotResult:
    a: int
    b: int
    b_prime: int
    word_verified: bool

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "b_prime": self.b_prime, "word_verified": self.word_verified}


def torus_knot_action(a: int, b: int, m: int) -> TorusKnotResult:
    """T(a, b) -> T(a, b (1 + m a (a - 1))), checked on expanded words"""
    if a < 2 or b < 1:
        raise ValueError(f"torus knots need a >= 2 and b >= 1, got a={a}, b={b}")
    b_prime = b * (1 + m * a * (a - 1))
    image = rho_endo(torus_word(a, b), m)
    verified = image.expand() == torus_word(a, b_prime).letters
    logger.debug(f"torus_knot_action({a}, {b}, m={m}) -> b'={b_prime}, verified={verified}")
    return TorusKnotResult(a, b, b_prime, verified)


@dataclass
class MarkovReport:
    """rho_{N+1}(gamma s_N) against the stabilization rho_{N+1}(gamma) s_N"""

    image: BraidWord
    stabilized: BraidWord
    twist_offset: int
    holds: bool

    def to_dict(self) -> dict:
        return {
            "image": self.image.to_dict(),
            "stabilized": self.stabilized.to_dict(),
            "twist_offset": self.twist_offset,
            "holds": self.holds,
        }


def markov_check(gamma: BraidWord, m: int) -> MarkovReport:
    """rho_{N+1}(gamma s_N) = rho_{N+1}(gamma) s_N T_{N+1}^m: the image misses a
    plain stabilization by exactly m full twists
    """
    N = gamma.strands
    lifted = gamma.embed(N + 1)
    s_N = BraidWord(N + 1, (N,), 0)
    image = rho_endo(lifted * s_N, m)
    stabilized = rho_endo(lifted, m) * s_N
    offset = image.center_exp - stabilized.center_exp
    holds = image.same_element(stabilized * BraidWord.twist(N + 1, m)) and offset == m
    return MarkovReport(image, stabilized, offset, holds)
