"""Maslanka coefficients A_k, the RH-criterion sequence b_k, and a disk cache.

    A_k = sum_{j=0}^{k} (-1)^j C(k,j) (2j+1) zeta(2j+2)
    b_k = sum_{j=0}^{k} (-1)^j C(k,j) / zeta(2j+2)

Both sums cancel catastrophically: terms grow like C(k, k/2) ~ 2^k while the
result shrinks faster than any power of k.  Each index is therefore evaluated
independently at the escalated precision from required_bits_for_alternating_sum
and rounded back to the context's target, so the precision cost is linear in k
and no cross-k state exists (table builds parallelize trivially).

zeta(2j+2) always comes from the exact Bernoulli formula (zeta_rational_part),
never from summing a Dirichlet series: the rational part of every term is
exact, leaving the alternating accumulation as the sole error source.  The
stored error bound 2^(-working_bits) * (2k+1) * zeta(2) * C(k, k//2) reflects
that; consumers compare it against |value| to detect precision exhaustion.
"""

from __future__ import annotations

import hashlib
import math
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from mpmath import mp, mpf
from mpmath.libmp import to_str

from .bernoulli import zeta_rational_part
from .mpnum import PrecisionContext, Real, required_bits_for_alternating_sum

__all__ = [
    "CoefficientTable",
    "TableFormatError",
    "a_k",
    "a_k_alt",
    "a_k_exact_pi",
    "b_k",
    "build_table",
    "format_real",
    "load_table",
    "mantissa_digits",
    "parse_real",
    "save_table",
]

FORMAT_MAGIC = "MASLANKA-COEFF v1"

KINDS = ("A", "b")
PROVENANCES = ("direct_sum", "exact_pi_oracle", "em_remainder")


class TableFormatError(ValueError):
    """Raised when a coefficient cache file violates format v1."""


@dataclass(frozen=True)
class CoefficientTable:
    """Precision-stamped coefficient values A_0..A_k_max or b_0..b_k_max.

    ``values[k]`` is rounded to exactly ``target_bits`` (which is what makes
    the cache round-trip bit-exact), and ``error_bound_exponents[k]`` is an
    integer e with |computed - true| <= 2**e.
    """

    kind: str
    k_max: int
    target_bits: int
    values: tuple[Real, ...]
    error_bound_exponents: tuple[int, ...]
    provenance: str = "direct_sum"

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if self.provenance not in PROVENANCES:
            raise ValueError(f"provenance must be one of {PROVENANCES}")
        if len(self.values) != self.k_max + 1:
            raise ValueError("values length must be k_max + 1")
        if len(self.error_bound_exponents) != self.k_max + 1:
            raise ValueError("error_bound_exponents length must be k_max + 1")

    def __getitem__(self, k: int) -> Real:
        return self.values[k]

    def error_bound(self, k: int) -> Real:
        return mpf(2) ** self.error_bound_exponents[k]


def _alternating_zeta_sum(k: int, working_bits: int, reciprocal: bool) -> Real:
    """sum_j (-1)^j C(k,j) w_j at the given precision, where w_j = (2j+1) zeta(2j+2)
    for the A-side and w_j = 1/zeta(2j+2) for the b-side.

    Binomials are carried exactly (integer recurrence), zeta values come from
    the exact rational q(2j+2) times a ladder of powers of pi^2.
    """
    with mp.workprec(working_bits):
        pi2 = mp.pi ** 2
        if reciprocal:
            pi2 = 1 / pi2
        ppow = pi2
        acc = mp.zero
        c = 1  # C(k, j), exact
        for j in range(k + 1):
            q = zeta_rational_part(2 * j + 2)
            if reciprocal:
                term = mpf(c * q.denominator) / mpf(q.numerator) * ppow
            else:
                term = mpf(c * (2 * j + 1) * q.numerator) / mpf(q.denominator) * ppow
            acc = acc + term if j % 2 == 0 else acc - term
            c = c * (k - j) // (j + 1)
            ppow = ppow * pi2
        return +acc


def a_k(k: int, ctx: PrecisionContext) -> Real:
    """A_k by the defining alternating sum, precision escalated for index k.

    The result is accurate to about 2^(-target_bits) relative; in absolute
    terms accuracy is capped by the stored error bound once |A_k| falls under
    2^(-target_bits) times the largest intermediate term.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    w = required_bits_for_alternating_sum(k, ctx.target_bits)
    return _alternating_zeta_sum(k, w, reciprocal=False)


def b_k(k: int, ctx: PrecisionContext) -> Real:
    """b_k = sum_j (-1)^j C(k,j)/zeta(2j+2), same escalation policy as a_k."""
    if k < 0:
        raise ValueError("k must be >= 0")
    w = required_bits_for_alternating_sum(k, ctx.target_bits)
    return _alternating_zeta_sum(k, w, reciprocal=True)


def a_k_alt(k: int, ctx: PrecisionContext) -> Real:
    """A_k by the reindexed sum over C(k-1, j), an independent cross-identity.

        sum_{j=0}^{k-1} (-1)^j C(k-1,j) (zeta(2j+2) - (2k+1) zeta(2j+4))

    Must agree with a_k(k); exercised as Identity A in the tests.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    w = required_bits_for_alternating_sum(k, ctx.target_bits)
    with mp.workprec(w):
        pi2 = mp.pi ** 2
        ppow = pi2  # pi^(2j+2)
        acc = mp.zero
        c = 1  # C(k-1, j)
        for j in range(k):
            qa = zeta_rational_part(2 * j + 2)
            qb = zeta_rational_part(2 * j + 4)
            za = mpf(qa.numerator) / mpf(qa.denominator) * ppow
            zb = mpf(qb.numerator) / mpf(qb.denominator) * (ppow * pi2)
            term = mpf(c) * (za - (2 * k + 1) * zb)
            acc = acc + term if j % 2 == 0 else acc - term
            c = c * (k - 1 - j) // (j + 1)
            ppow = ppow * pi2
        return +acc


def a_k_exact_pi(k: int, ctx: PrecisionContext) -> Real:
    """A_k via exact rational pi^2-polynomial coefficients (oracle path).

    A_k = sum_j r_j (pi^2)^(j+1) with r_j = (-1)^j C(k,j) (2j+1) q(2j+2) held
    as exact Fractions; a single Horner pass in pi^2 does all the rounding.
    Used as the oracle of record for small k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    coeffs: list[Fraction] = []
    for j in range(k + 1):
        r = Fraction((-1) ** j * math.comb(k, j) * (2 * j + 1)) * zeta_rational_part(2 * j + 2)
        coeffs.append(r)
    w = required_bits_for_alternating_sum(k, ctx.target_bits)
    with mp.workprec(w):
        x = mp.pi ** 2
        acc = mp.zero
        for r in reversed(coeffs):
            acc = acc * x + mpf(r.numerator) / mpf(r.denominator)
        return +(acc * x)


def error_bound_exponent(k: int, target_bits: int) -> int:
    """Integer e with 2^e >= 2^(-working_bits) * (2k+1) * zeta(2) * C(k, k//2)."""
    w = required_bits_for_alternating_sum(k, target_bits)
    bound_num = (2 * k + 1) * 2 * math.comb(k, k // 2)  # zeta(2) < 2
    return bound_num.bit_length() - w


def _round_to_bits(x: Real, bits: int) -> Real:
    with mp.workprec(bits):
        return +x


def _entry_func(kind: str, method: str) -> Callable[[int, PrecisionContext], Real]:
    if kind == "b":
        if method != "direct_sum":
            raise ValueError("kind=b supports only method='direct_sum'")
        return b_k
    if method == "direct_sum":
        return a_k
    if method == "exact_pi_oracle":
        return a_k_exact_pi
    raise ValueError(f"unknown method {method!r}")


def _table_entry(args: tuple[str, str, int, int]) -> tuple[int, tuple]:
    """Worker for parallel builds: returns (k, mpf payload tuple)."""
    kind, method, k, target_bits = args
    ctx = PrecisionContext(target_bits)
    v = _entry_func(kind, method)(k, ctx)
    return k, _round_to_bits(v, target_bits)._mpf_


def _resolve_threads(threads: int | None) -> int:
    if threads is None:
        env = os.environ.get("MASLANKA_THREADS", "")
        if env:
            threads = int(env)
        else:
            threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError("threads must be >= 1")
    return threads


def build_table(
    kind: str,
    k_max: int,
    ctx: PrecisionContext,
    method: str = "direct_sum",
    threads: int | None = None,
    progress: Callable[[int], None] | None = None,
) -> CoefficientTable:
    """Fully populated CoefficientTable for k = 0..k_max.

    Entries are independent (own escalated precision each) so the build may
    fan out over processes; results are assembled in k order, making the
    content schedule-independent.  threads=None honours MASLANKA_THREADS and
    falls back to the core count.  ``progress`` gets the 0-based k of each
    finished entry.
    """
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    threads = _resolve_threads(threads)
    func = _entry_func(kind, method)

    values: list[Real] = []
    if threads == 1 or k_max == 0:
        for k in range(k_max + 1):
            values.append(_round_to_bits(func(k, ctx), ctx.target_bits))
            if progress is not None:
                progress(k)
    else:
        jobs = [(kind, method, k, ctx.target_bits) for k in range(k_max + 1)]
        chunk = max(1, (k_max + 1) // (8 * threads))
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for k, payload in pool.map(_table_entry, jobs, chunksize=chunk):
                values.append(mp.make_mpf(payload))
                if progress is not None:
                    progress(k)

    errs = tuple(error_bound_exponent(k, ctx.target_bits) for k in range(k_max + 1))
    provenance = "exact_pi_oracle" if method == "exact_pi_oracle" else "direct_sum"
    return CoefficientTable(
        kind=kind,
        k_max=k_max,
        target_bits=ctx.target_bits,
        values=tuple(values),
        error_bound_exponents=errs,
        provenance=provenance,
    )


# ---------------------------------------------------------------------------
# Cache format v1 (text):
#   line 1: MASLANKA-COEFF v1
#   line 2: kind=<A|b> kmax=<int> target_bits=<int>
#   line 3: sha256=<hex over the payload lines>
#   then one line per k:  <k> <sign><mantissa>e<exponent> <error_bound_exponent>
# The mantissa carries ceil(target_bits * 0.302) + 2 decimal digits, enough to
# identify a target_bits-bit binary float uniquely, so load(save(t)) == t bit
# for bit.  Parsing is strict: wrong field counts, stray fields, checksum or
# digit-count mismatches are all errors.
# ---------------------------------------------------------------------------


def mantissa_digits(target_bits: int) -> int:
    return math.ceil(target_bits * 0.302) + 2


def format_real(x: Real, digits: int) -> str:
    """Fixed-width scientific form <sign><d>.<d...>e<sign><exp> with `digits` digits."""
    if x == 0:
        return "+0." + "0" * (digits - 1) + "e+0"
    s = to_str(x._mpf_, digits, strip_zeros=False, min_fixed=1, max_fixed=0)
    sign = "-" if s.startswith("-") else "+"
    s = s.lstrip("+-")
    if "e" in s:
        mant, _, exp = s.partition("e")
        e = int(exp)
    else:
        mant, e = s, 0
    return f"{sign}{mant}e{e:+d}"


def parse_real(token: str, target_bits: int) -> Real:
    digits = mantissa_digits(target_bits)
    m = re.fullmatch(r"([+-])(\d\.\d{" + str(digits - 1) + r"})e([+-]\d+)", token)
    if m is None:
        raise TableFormatError(f"malformed value token {token!r}")
    with mp.workprec(target_bits):
        return +mpf(m.group(1) + m.group(2) + "e" + m.group(3))


def _payload_lines(table: CoefficientTable) -> list[str]:
    digits = mantissa_digits(table.target_bits)
    return [
        f"{k} {format_real(table.values[k], digits)} {table.error_bound_exponents[k]}"
        for k in range(table.k_max + 1)
    ]


def save_table(table: CoefficientTable, path) -> None:
    payload = "".join(line + "\n" for line in _payload_lines(table))
    sha = hashlib.sha256(payload.encode("ascii")).hexdigest()
    header = (
        f"{FORMAT_MAGIC}\n"
        f"kind={table.kind} kmax={table.k_max} target_bits={table.target_bits}\n"
        f"sha256={sha}\n"
    )
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(header)
        fh.write(payload)


def load_table(path) -> CoefficientTable:
    """Strict parse of cache format v1; any deviation raises TableFormatError.

    The returned table's provenance is direct_sum: the v1 header carries no
    provenance field and unknown fields are rejected, so the file cannot say.
    """
    with open(path, "r", encoding="ascii") as fh:
        text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if len(lines) < 4:
        raise TableFormatError("truncated file")
    if lines[0] != FORMAT_MAGIC:
        raise TableFormatError(f"unsupported format version line {lines[0]!r}")
    m = re.fullmatch(r"kind=(A|b) kmax=(\d+) target_bits=(\d+)", lines[1])
    if m is None:
        raise TableFormatError(f"malformed header line {lines[1]!r}")
    kind, k_max, target_bits = m.group(1), int(m.group(2)), int(m.group(3))
    if target_bits < 16:
        raise TableFormatError("target_bits out of range")
    c = re.fullmatch(r"sha256=([0-9a-f]{64})", lines[2])
    if c is None:
        raise TableFormatError(f"malformed checksum line {lines[2]!r}")
    payload_lines = lines[3:]
    if len(payload_lines) != k_max + 1:
        raise TableFormatError(
            f"expected {k_max + 1} payload lines, found {len(payload_lines)}"
        )
    payload = "".join(line + "\n" for line in payload_lines)
    sha = hashlib.sha256(payload.encode("ascii")).hexdigest()
    if sha != c.group(1):
        raise TableFormatError("checksum mismatch")
    values: list[Real] = []
    errs: list[int] = []
    for k, line in enumerate(payload_lines):
        parts = line.split(" ")
        if len(parts) != 3:
            raise TableFormatError(f"malformed payload line {line!r}")
        if parts[0] != str(k):
            raise TableFormatError(f"payload index {parts[0]!r} out of order (expected {k})")
        values.append(parse_real(parts[1], target_bits))
        try:
            errs.append(int(parts[2]))
        except ValueError as exc:
            raise TableFormatError(f"malformed error bound in line {line!r}") from exc
    return CoefficientTable(
        kind=kind,
        k_max=k_max,
        target_bits=target_bits,
        values=tuple(values),
        error_bound_exponents=tuple(errs),
    )
