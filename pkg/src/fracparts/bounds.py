"""Truncated lower/upper bound sequences with directed rounding.

For a truncation schedule d = (d_j), 1 <= d_j <= j, the two recursions

    lo(n) = (a/n) * sum_{l=1}^{d_n} sigma(l) lo(n-l)
    hi(n) = (a/n) * sum_{l=1}^{d_n} sigma(l) hi(n-l) + a * n * hi(n - d_n - 1)

(lo(0) = hi(0) = 1, zero for negative index) sandwich the exact value,
lo(n) <= p_a(n) <= hi(n).  Every operation in the lo carrier rounds
toward -inf and in the hi carrier toward +inf, so the sandwich survives
finite precision.  Values are positive floating numbers with an exactly
``precision_bits``-bit integer mantissa.

Two execution paths share one streaming interface:

* generic: a windowed per-term loop, O(d_n) big-integer operations per
  step; used for genuinely truncated schedules (small d_n).

* packed: for full-history ranges (d_j = j, which covers the built-in d4
  and d5 schedules on desk-scale n), the quadratic history/step pair
  structure is decomposed into dyadic blocks.  When the step counter
  reaches an odd multiple m of a power-of-two block size s, the value
  block [(m-1)s, ms) is packed into a single big integer (fixed-width
  slots, each a directed-rounded fixed-point rendering of one value) and
  multiplied by a packed sigma segment; one GMP multiplication then
  pre-computes that block's contribution to every one of the next s
  steps, which is read back by shift/mask.  Each (history, step) pair is
  covered by exactly one scale (proved by a 2-adic argument; also
  enforced by tests against the generic path), the per-slot compression
  rounds in the carrier direction, and each step performs O(log n)
  extractions plus a tiny in-block loop, so the whole run is a few
  big-integer multiplications per block rather than O(n) work per step.

Checkpoints serialize the full resume state plus a running integrity
hash; resuming reproduces the remaining stream bit for bit.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

import gmpy2

from .arith import SigmaTable, sigma_sieve
from .certificates import Certificate, rat_str
from .exact import exact_sequence

CHECKPOINT_VERSION = 1
DEFAULT_PRECISION = 256
DEFAULT_CHECKPOINT_EVERY = 100_000

_UNIT = 32  # base block granularity (values per unit) of the packed path


class PrecisionUnderflowError(ArithmeticError):
    def __init__(self, n: int):
        super().__init__("lower carrier underflowed at n=%d" % n)
        self.n = n


class SandwichViolationError(AssertionError):
    pass


class CheckpointError(ValueError):
    pass


# ---------------------------------------------------------------------------
# schedules


@dataclass(frozen=True)
class TruncationSchedule:
    """Deterministic rule j -> d_j with 1 <= d_j <= j."""

    name: str
    rule: Callable[[int], int]
    params: Optional[dict] = None
    serializable: bool = True

    def __call__(self, j: int) -> int:
        return self.rule(j)

    def spec_string(self) -> str:
        if not self.serializable:
            raise CheckpointError(
                "schedule %r has no serializable form" % self.name)
        if self.params is None:
            return self.name
        return "%s;c=%s;delta=%s;breakpoint=%d" % (
            self.name, rat_str(self.params["c"]),
            rat_str(self.params["delta"]), self.params["breakpoint"])


def _floor_power(c: Fraction, delta: Fraction, j: int) -> int:
    """Exact floor(c * j**delta) for positive rationals via integer roots."""
    p, q = c.numerator, c.denominator
    u, v = delta.numerator, delta.denominator
    a = p ** v * j ** u
    b = q ** v
    t = int(gmpy2.iroot(a // b, v)[0])
    while (t + 1) ** v * b <= a:
        t += 1
    while t > 0 and t ** v * b > a:
        t -= 1
    return t


def _d4_rule(j: int) -> int:
    if j <= 200_000:
        return j
    if j <= 3_500_000:
        return int(gmpy2.iroot(250 ** 3 * j, 3)[0])
    return int(gmpy2.iroot(1125 ** 3 * j, 3)[0])


def _d5_rule(j: int) -> int:
    if j <= 800_000:
        return j
    if j <= 20_000_000:
        return int(gmpy2.isqrt(625 * j))
    return int(gmpy2.isqrt(1849 * j)) // 2


def make_schedule(spec) -> TruncationSchedule:
    """Builtins "full", "d4", "d5"; a dict {c, delta, breakpoint} for
    d_j = j below the breakpoint, min(j, floor(c j^delta)) above; or a
    bare callable (not serializable into checkpoints)."""
    if isinstance(spec, TruncationSchedule):
        return spec
    if callable(spec) and not isinstance(spec, str):
        sched = TruncationSchedule("custom-fn", spec, serializable=False)
        _validate_schedule(sched)
        return sched
    if isinstance(spec, str) and ";" in spec:
        name, *kv = spec.split(";")
        params = dict(item.split("=", 1) for item in kv)
        return make_schedule({"c": params["c"], "delta": params["delta"],
                              "breakpoint": int(params["breakpoint"])})
    if spec == "full":
        return TruncationSchedule("full", lambda j: j)
    if spec == "d4":
        return TruncationSchedule("d4", _d4_rule)
    if spec == "d5":
        return TruncationSchedule("d5", _d5_rule)
    if isinstance(spec, dict):
        c = Fraction(spec["c"])
        delta = Fraction(spec["delta"])
        breakpoint = int(spec.get("breakpoint", 0))
        if c <= 0 or delta < 0:
            raise ValueError("schedule power rule needs c > 0, delta >= 0")

        def rule(j: int, _c=c, _d=delta, _b=breakpoint) -> int:
            if j <= _b:
                return j
            return min(j, _floor_power(_c, _d, j))

        sched = TruncationSchedule(
            "power", rule,
            {"c": c, "delta": delta, "breakpoint": breakpoint})
        _validate_schedule(sched)
        return sched
    raise ValueError("unrecognized schedule spec: %r" % (spec,))


def _validate_schedule(sched: TruncationSchedule, probe: int = 1000) -> None:
    for j in list(range(1, probe + 1)) + [10**4, 10**5, 10**6]:
        d = sched.rule(j)
        if not 1 <= d <= j:
            raise ValueError(
                "schedule %s violates 1 <= d_j <= j at j=%d (d=%d)"
                % (sched.name, j, d))


# ---------------------------------------------------------------------------
# directed values


@dataclass(frozen=True)
class DirectedValue:
    """Positive float m * 2**e with an exactly `precision`-bit mantissa,
    tagged with its rounding direction."""

    mantissa: int
    exponent: int
    direction: str  # "down" | "up"
    precision: int

    def as_fraction(self) -> Fraction:
        if self.exponent >= 0:
            return Fraction(self.mantissa * (1 << self.exponent))
        return Fraction(self.mantissa, 1 << -self.exponent)

    def __float__(self) -> float:
        try:
            return float(self.as_fraction())
        except OverflowError:
            return float("inf")

    def serialize(self) -> str:
        return "+:%d:%x" % (self.exponent, self.mantissa)


@dataclass(frozen=True)
class BoundPair:
    n: int
    lower: DirectedValue
    upper: DirectedValue

    def width_fraction(self) -> Fraction:
        return self.upper.as_fraction() - self.lower.as_fraction()


def _normalize(m: int, e: int, prec: int, up: bool) -> tuple[int, int]:
    """Directed rounding of positive m * 2**e to an exactly prec-bit mantissa."""
    nb = m.bit_length()
    if nb == prec:
        return m, e
    if nb < prec:
        return m << (prec - nb), e - (prec - nb)
    sh = nb - prec
    q = m >> sh
    if up and (m & ((1 << sh) - 1)):
        q += 1
        if q.bit_length() > prec:  # carried into a power of two
            q >>= 1
            sh += 1
    return q, e + sh


def _div_dir(num: int, den: int, e: int, prec: int, up: bool) -> tuple[int, int]:
    """Directed (num / den) * 2**e to a prec-bit mantissa; num, den > 0."""
    shift = prec + 2 + den.bit_length() - num.bit_length()
    if shift >= 0:
        q, rem = divmod(num << shift, den)
    else:
        q, rem = divmod(num, den << -shift)
    if up and rem:
        q += 1
    return _normalize(q, e - shift, prec, up)


def _shift_dir(m: int, delta: int, up: bool) -> int:
    """Directed m * 2**delta as an integer (m >= 0)."""
    if delta >= 0:
        return m << delta
    down = m >> -delta
    if up and (m & ((1 << -delta) - 1)):
        down += 1
    return down


# ---------------------------------------------------------------------------
# engines


class _GenericEngine:
    """Windowed per-term evaluation; works for every schedule."""

    def __init__(self, alpha: Fraction, sched: TruncationSchedule,
                 n_max: int, prec: int, sigma: SigmaTable):
        self.alpha = alpha
        self.sched = sched
        self.prec = prec
        self.sigma = sigma.values
        self.n_max = n_max
        # window must reach back d_j + 1 for every future step
        self.depth = max(sched.rule(j) for j in range(1, n_max + 1)) + 2
        one = 1 << (prec - 1)
        self.lo = [(one, 1 - prec)]
        self.hi = [(one, 1 - prec)]
        self.n = 0
        self.base = 0  # absolute index of self.lo[0]

    def window_size(self) -> int:
        return min(len(self.lo), self.depth)

    def _trim(self):
        if len(self.lo) > self.depth + 16:
            cut = len(self.lo) - self.depth
            del self.lo[:cut]
            del self.hi[:cut]
            self.base += cut

    def values_for_state(self):
        keep = min(len(self.lo), self.depth)
        return self.n + 1 - keep, self.lo[-keep:], self.hi[-keep:]

    def load_window(self, base: int, lo, hi, n: int):
        self.lo = list(lo)
        self.hi = list(hi)
        self.n = n
        self.base = base

    def step(self) -> tuple[tuple[int, int], tuple[int, int]]:
        n = self.n + 1
        if n > self.n_max:
            raise StopIteration
        d = self.sched.rule(n)
        anum, aden = self.alpha.numerator, self.alpha.denominator
        sig = self.sigma
        out = []
        for up, vals in ((False, self.lo), (True, self.hi)):
            parts = []
            off = n - self.base  # index of slot n in vals
            for ell in range(1, d + 1):
                m, e = vals[off - ell]
                parts.append((sig[ell] * m, e))
            if up and n - d - 1 >= 0:
                mprev, eprev = vals[off - d - 1]
                # the a*n*hi(n-d-1) surcharge, folded into the same
                # single division so it rounds exactly once
                parts.append((n * n * mprev, eprev))
            emin = min(e for _, e in parts)
            s = sum(v << (e - emin) for v, e in parts)
            m_out, e_out = _div_dir(anum * s, aden * n, emin, self.prec, up)
            if m_out <= 0:
                raise PrecisionUnderflowError(n)
            out.append((m_out, e_out))
            vals.append(out[-1])
        self.n = n
        self._trim()
        return out[0], out[1]


class _PackedEngine:
    """Dyadic block-convolution evaluation of the full-history recursion."""

    def __init__(self, alpha: Fraction, n_max: int, prec: int,
                 sigma: SigmaTable, unit: int = _UNIT):
        self.alpha = alpha
        self.prec = prec
        self.n_max = n_max
        self.unit = unit
        self.sigma = sigma.values
        one = 1 << (prec - 1)
        self.lo = [(one, 1 - prec)]
        self.hi = [(one, 1 - prec)]
        self.n = 0
        # per carrier: scale -> (packed product, block start, E_ref, W, m_odd)
        self.products = ({}, {})
        self.sigma_packs = {}

    def window_size(self) -> int:
        return len(self.lo)

    def values_for_state(self):
        return 0, self.lo, self.hi

    def load_window(self, base: int, lo, hi, n: int):
        if base != 0:
            raise CheckpointError("packed engine requires the full history")
        self.lo = list(lo)
        self.hi = list(hi)
        self.n = n
        u = self.unit
        units_now = n // u
        for s_exp in range(0, max(1, units_now).bit_length() + 1):
            s = 1 << s_exp
            m = units_now // s
            if m >= 1 and m % 2 == 1 and n < (m + 1) * s * u:
                self._fire(s, m)

    def _sigma_pack(self, s: int, W: int) -> int:
        key = (s, W)
        pack = self.sigma_packs.get(key)
        if pack is None:
            span = 2 * s * self.unit - 1
            sig = self.sigma
            limit = len(sig) - 1
            vals = [sig[ell] if ell <= limit else 0
                    for ell in range(1, span + 1)]
            pack = _pack_slots(vals, W)
            self.sigma_packs[key] = pack
        return pack

    def _slot_width(self, s: int) -> tuple[int, int]:
        span = 2 * s * self.unit - 1
        limit = len(self.sigma) - 1
        smax = max(self.sigma[1:min(span, limit) + 1])
        sb = smax.bit_length()
        gpad = sb + (s * self.unit).bit_length() + 8
        W = (self.prec + gpad + 1) + sb + (s * self.unit).bit_length() + 2
        W += (-W) % 8  # byte-aligned slots, so extraction is a bytes slice
        return gpad, W

    def _fire(self, s: int, m: int) -> None:
        u = self.unit
        a = (m - 1) * s * u
        b = m * s * u
        gpad, W = self._slot_width(s)
        spack = self._sigma_pack(s, W)
        wb = W // 8
        buflen = (3 * s * u) * wb + 16
        for idx, (up, vals) in enumerate(((False, self.lo), (True, self.hi))):
            block = vals[a:b]
            e_top = max(e for _, e in block)
            e_ref = e_top - gpad
            slots = [_shift_dir(mm, ee - e_ref, up) for mm, ee in block]
            prod = int(_pack_slots(slots, W) * spack)
            buf = prod.to_bytes(buflen, "little")
            self.products[idx][s] = (buf, a, e_ref, wb, m)

    def step(self) -> tuple[tuple[int, int], tuple[int, int]]:
        n = self.n + 1
        if n > self.n_max:
            raise StopIteration
        u = self.unit
        if n % u == 0:
            units = n // u
            s = 1
            while units % s == 0:
                m = units // s
                if m % 2 == 1:
                    self._fire(s, m)
                if units % (2 * s):
                    break
                s *= 2
        units_now = n // u
        sig = self.sigma
        anum, aden = self.alpha.numerator, self.alpha.denominator
        out = []
        for idx, (up, vals) in enumerate(((False, self.lo), (True, self.hi))):
            parts = []
            for i in range(units_now * u, n):
                mm, ee = vals[i]
                parts.append((sig[n - i] * mm, ee))
            prods = self.products[idx]
            s = 1
            while s <= units_now:
                m = units_now // s
                if m % 2 == 1:
                    buf, a, e_ref, wb, m_stored = prods[s]
                    assert m_stored == m
                    start = (n - a - 1) * wb
                    parts.append((int.from_bytes(buf[start:start + wb],
                                                 "little"), e_ref))
                s *= 2
            emin = min(e for _, e in parts)
            total = sum(v << (e - emin) for v, e in parts)
            m_out, e_out = _div_dir(anum * total, aden * n, emin, self.prec, up)
            if m_out <= 0:
                raise PrecisionUnderflowError(n)
            out.append((m_out, e_out))
            vals.append(out[-1])
        self.n = n
        return out[0], out[1]


def _pack_slots(vals: list[int], W: int) -> int:
    """sum(vals[i] << (W*i)) by pairwise tree combination (linear bit work)."""
    items = [gmpy2.mpz(v) for v in vals]
    shift = W
    while len(items) > 1:
        nxt = []
        for i in range(0, len(items) - 1, 2):
            nxt.append(items[i] | (items[i + 1] << shift))
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
        shift *= 2
    return items[0] if items else gmpy2.mpz(0)


def _schedule_is_full(sched: TruncationSchedule, n_max: int) -> bool:
    if sched.name == "full":
        return True
    step = max(1, n_max // 4096)
    probe = set(range(1, min(n_max, 64) + 1))
    probe.update(range(1, n_max + 1, step))
    probe.add(n_max)
    return all(sched.rule(j) == j for j in sorted(probe))


# ---------------------------------------------------------------------------
# run state and checkpoints


@dataclass
class BoundRunState:
    alpha: Fraction
    schedule: TruncationSchedule
    precision_bits: int
    current_n: int
    window_base: int
    window_lo: list
    window_hi: list
    integrity_hash: str
    checkpoint_digests: tuple = ()


def _hash_pair(h: str, n: int, lo: tuple[int, int], hi: tuple[int, int]) -> str:
    line = "%s|%d:%x:%d:%x:%d" % (h, n, lo[0], lo[1], hi[0], hi[1])
    return hashlib.sha256(line.encode()).hexdigest()


def checkpoint_save(state: BoundRunState, path: str) -> str:
    """Write a resumable checkpoint; returns its content digest."""
    lines = ["fracparts-checkpoint v%d" % CHECKPOINT_VERSION,
             "alpha %s" % rat_str(state.alpha),
             "schedule %s" % state.schedule.spec_string(),
             "precision_bits %d" % state.precision_bits,
             "current_n %d" % state.current_n,
             "window_base %d" % state.window_base,
             "integrity %s" % state.integrity_hash,
             "prior_checkpoints %s" % ",".join(state.checkpoint_digests)]
    for (lm, le), (hm, he) in zip(state.window_lo, state.window_hi):
        lines.append("+:%d:%x +:%d:%x" % (le, lm, he, hm))
    body = "\n".join(lines)
    digest = hashlib.sha256(body.encode()).hexdigest()
    with open(path, "w") as fh:
        fh.write(body + "\nsha256 %s\n" % digest)
    return digest


def checkpoint_load(path: str) -> BoundRunState:
    with open(path) as fh:
        text = fh.read()
    lines = text.rstrip("\n").split("\n")
    if not lines or not lines[0].startswith("fracparts-checkpoint v"):
        raise CheckpointError("not a checkpoint file: %s" % path)
    version = int(lines[0].split("v")[-1])
    if version != CHECKPOINT_VERSION:
        raise CheckpointError("unsupported checkpoint version %d" % version)
    if not lines[-1].startswith("sha256 "):
        raise CheckpointError("truncated checkpoint (no digest line)")
    stated = lines[-1].split()[1]
    body = "\n".join(lines[:-1])
    if hashlib.sha256(body.encode()).hexdigest() != stated:
        raise CheckpointError("checkpoint digest mismatch (corrupt file)")

    header = {}
    nvals = 0
    window_lo, window_hi = [], []
    for line in lines[1:-1]:
        if line.startswith("+:"):
            lo_s, hi_s = line.split()
            _, le, lm = lo_s.split(":")
            _, he, hm = hi_s.split(":")
            window_lo.append((int(lm, 16), int(le)))
            window_hi.append((int(hm, 16), int(he)))
            nvals += 1
        else:
            key, _, val = line.partition(" ")
            header[key] = val
    digests = tuple(d for d in header.get("prior_checkpoints", "").split(",") if d)
    digests += (stated,)  # this checkpoint joins the chain it records
    return BoundRunState(
        alpha=Fraction(header["alpha"]),
        schedule=make_schedule(header["schedule"]),
        precision_bits=int(header["precision_bits"]),
        current_n=int(header["current_n"]),
        window_base=int(header["window_base"]),
        window_lo=window_lo,
        window_hi=window_hi,
        integrity_hash=header["integrity"],
        checkpoint_digests=digests)


# ---------------------------------------------------------------------------
# public runs


class BoundRun:
    """A single streaming lower/upper run with optional checkpointing."""

    def __init__(self, alpha, schedule, n_max: int,
                 precision_bits: int = DEFAULT_PRECISION,
                 checkpoint_path: Optional[str] = None,
                 checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
                 resume_state: Optional[BoundRunState] = None,
                 unit: int = _UNIT, engine: str = "auto"):
        alpha = Fraction(alpha)
        if alpha <= 0:
            raise ValueError("alpha must be positive")
        if precision_bits < 64:
            raise ValueError("precision_bits must be >= 64")
        sched = make_schedule(schedule)
        self.alpha = alpha
        self.schedule = sched
        self.n_max = n_max
        self.prec = precision_bits
        self.checkpoint_path = checkpoint_path
        self.checkpoint_every = checkpoint_every
        self.peak_window = 0

        sigma = sigma_sieve(max(1, n_max))
        use_packed = (engine == "packed" or
                      (engine == "auto" and _schedule_is_full(sched, n_max)))
        if use_packed:
            if not _schedule_is_full(sched, n_max):
                raise ValueError(
                    "packed engine requires a full-history schedule")
            self.engine = _PackedEngine(alpha, n_max, precision_bits, sigma,
                                        unit=unit)
        else:
            self.engine = _GenericEngine(alpha, sched, n_max, precision_bits,
                                         sigma)
        self.integrity = hashlib.sha256(
            ("run:%s:%s:%d" % (rat_str(alpha), sched.spec_string()
                               if sched.serializable else sched.name,
                               precision_bits)).encode()).hexdigest()
        self.checkpoint_digests: tuple = ()
        self.start_n = 0
        if resume_state is not None:
            self._resume(resume_state)

    def _resume(self, st: BoundRunState) -> None:
        if (st.alpha != self.alpha or st.precision_bits != self.prec
                or st.schedule.spec_string() != self.schedule.spec_string()):
            raise CheckpointError(
                "checkpoint parameters do not match this run")
        self.engine.load_window(st.window_base, st.window_lo, st.window_hi,
                                st.current_n)
        self.integrity = st.integrity_hash
        self.checkpoint_digests = st.checkpoint_digests
        self.start_n = st.current_n

    def state(self) -> BoundRunState:
        base, lo, hi = self.engine.values_for_state()
        return BoundRunState(self.alpha, self.schedule, self.prec,
                             self.engine.n, base, lo, hi, self.integrity,
                             self.checkpoint_digests)

    def _emit(self, n: int, lo: tuple[int, int], hi: tuple[int, int]) -> BoundPair:
        return BoundPair(
            n,
            DirectedValue(lo[0], lo[1], "down", self.prec),
            DirectedValue(hi[0], hi[1], "up", self.prec))

    def pairs(self, stop_after: Optional[int] = None) -> Iterator[BoundPair]:
        """Yield BoundPair for successive n; n = 0 is the exact pair (1,1).

        ``stop_after`` ends the stream early after emitting that n (used to
        simulate interruption in tests)."""
        prec = self.prec
        one = (1 << (prec - 1), 1 - prec)
        if self.start_n == 0:
            yield self._emit(0, one, one)
        while self.engine.n < self.n_max:
            lo, hi = self.engine.step()
            n = self.engine.n
            self.integrity = _hash_pair(self.integrity, n, lo, hi)
            self.peak_window = max(self.peak_window, self.engine.window_size())
            yield self._emit(n, lo, hi)
            if (self.checkpoint_path and self.checkpoint_every
                    and n % self.checkpoint_every == 0 and n < self.n_max):
                digest = checkpoint_save(self.state(), self.checkpoint_path)
                self.checkpoint_digests = self.checkpoint_digests + (digest,)
            if stop_after is not None and n >= stop_after:
                return


def run_bounds(alpha, schedule, n_max: int,
               precision_bits: int = DEFAULT_PRECISION,
               checkpoint_path: Optional[str] = None,
               checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
               resume_state: Optional[BoundRunState] = None) -> Iterator[BoundPair]:
    """Stream BoundPairs for n = 0..n_max (from the checkpoint on resume)."""
    run = BoundRun(alpha, schedule, n_max, precision_bits,
                   checkpoint_path, checkpoint_every, resume_state)
    return run.pairs()


# ---------------------------------------------------------------------------
# audits and certification


def sandwich_audit(alpha, schedule, n_audit: int,
                   precision_bits: int = DEFAULT_PRECISION) -> dict:
    """Check lower <= exact <= upper for n <= n_audit; fatal on violation.

    Returns a report with the worst relative gap (upper-lower)/lower."""
    if n_audit > 5000:
        raise ValueError("sandwich audit needs exact values; keep n <= 5000")
    alpha = Fraction(alpha)
    seq = exact_sequence(alpha, n_audit)
    worst_gap = Fraction(0)
    worst_n = 0
    for pair in run_bounds(alpha, schedule, n_audit, precision_bits):
        exact = seq.values[pair.n]
        exact = exact if isinstance(exact, Fraction) else Fraction(int(exact))
        lo = pair.lower.as_fraction()
        hi = pair.upper.as_fraction()
        if not lo <= exact <= hi:
            raise SandwichViolationError(
                "sandwich violated at n=%d: %s <= %s <= %s is false"
                % (pair.n, lo, exact, hi))
        gap = (hi - lo) / lo
        if gap > worst_gap:
            worst_gap, worst_n = gap, pair.n
    return {"alpha": alpha, "n_audit": n_audit,
            "violations": 0, "worst_gap": worst_gap, "worst_gap_n": worst_n}


def _lc_ok(lo_n, hi_prev, hi_next) -> bool:
    """Exact check lo(n)^2 >= hi(n-1) * hi(n+1) on mantissa/exponent pairs."""
    (m, e), (m1, e1), (m2, e2) = lo_n, hi_prev, hi_next
    left = m * m
    right = m1 * m2
    d = 2 * e - (e1 + e2)
    if d >= 0:
        return left << d >= right
    return left >= right << -d


def certify_logconcave(alpha, schedule, n_from: int, n_to: int,
                       precision_bits: int = DEFAULT_PRECISION,
                       checkpoint_path: Optional[str] = None,
                       checkpoint_every: int = DEFAULT_CHECKPOINT_EVERY,
                       escalations: int = 1,
                       exact_cap: int = 5000) -> Certificate:
    """Certify p_alpha(n)^2 >= p_alpha(n-1) p_alpha(n+1) for n_from..n_to
    via the directed sufficient check lo(n)^2 >= hi(n-1) hi(n+1).

    A failed directed check is escalated (doubled precision, then exact
    confirmation when within reach); only an exact violation becomes a
    counterexample, otherwise the certificate is indeterminate there.
    """
    alpha = Fraction(alpha)
    if n_from < 1:
        raise ValueError("n_from must be >= 1")
    if n_to < n_from:
        raise ValueError("empty range")

    def scan(prec: int, suspects=None, use_checkpoints=False):
        failures = []
        path = checkpoint_path if use_checkpoints else None
        resume_state = None
        if path is not None and os.path.exists(path):
            resume_state = checkpoint_load(path)
        run = BoundRun(alpha, schedule, n_to + 1, prec, path,
                       checkpoint_every, resume_state)
        window = {}
        if resume_state is not None:
            # seed the seam so the first post-resume triples are checked
            base = resume_state.window_base
            for off in range(max(0, len(resume_state.window_lo) - 2),
                             len(resume_state.window_lo)):
                lm, le = resume_state.window_lo[off]
                hm, he = resume_state.window_hi[off]
                window[base + off] = (lm, le, hm, he)
        for pair in run.pairs():
            window[pair.n] = (pair.lower.mantissa, pair.lower.exponent,
                              pair.upper.mantissa, pair.upper.exponent)
            n_chk = pair.n - 1
            if (n_from <= n_chk <= n_to and n_chk - 1 in window
                    and (suspects is None or n_chk in suspects)):
                a = window[n_chk - 1]
                b = window[n_chk]
                c = window[pair.n]
                if not _lc_ok((b[0], b[1]), (a[2], a[3]), (c[2], c[3])):
                    failures.append(n_chk)
            window.pop(pair.n - 2, None)
        return failures, run

    failures, run = scan(precision_bits, use_checkpoints=checkpoint_path is not None)
    prec = precision_bits
    level = 0
    while failures and level < escalations:
        level += 1
        prec *= 2
        failures, _ = scan(prec, suspects=set(failures))

    witness = None
    outcome = "verified"
    exceptions: tuple = ()
    if failures:
        if n_to + 1 <= exact_cap:
            seq = exact_sequence(alpha, n_to + 1)
            v = seq.values
            genuine = [n for n in failures
                       if v[n] * v[n] < v[n - 1] * v[n + 1]]
            if genuine:
                outcome = "counterexample"
                witness = genuine[0]
            else:
                outcome = "indeterminate"
                witness = failures[0]
        else:
            outcome = "indeterminate"
            witness = failures[0]

    return Certificate(
        statement="log-concave",
        alpha=rat_str(alpha),
        n_from=n_from,
        n_to=n_to,
        method="bounded",
        outcome=outcome,
        witness=witness,
        exceptions=exceptions,
        schedule=run.schedule.name,
        schedule_params=(run.schedule.spec_string()
                         if run.schedule.serializable else None),
        precision_bits=precision_bits,
        checkpoint_digests=run.checkpoint_digests,
        notes="directed check lo(n)^2 >= hi(n-1)*hi(n+1); "
              "failures escalated before being reported")
