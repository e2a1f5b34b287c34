"""Bit-exact block-Markov simulation of the relay-layer schemes.

Each scheme transmits B blocks. Transmitter 1 hears its own receiver
(feedback link D1 -> T1), recovers the relay segment sent by T2, and
forwards it in the next block. Receivers decode either forward (using
what they learned in the previous block) or backward (starting from the
last block, which carries no fresh relay data).

Decoders only look at their own channel outputs plus bits they have
already decoded; the transmitted messages are consulted solely to score
``decode_ok``.
"""
from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .det_model import DetParams, unpack
from .rate_region import RatePair


class SchemeDomain(ValueError):
    pass


class SchemeId(enum.Enum):
    WEAK_R2SUM = "WEAK_R2SUM"
    WEAK_SUM2R = "WEAK_SUM2R"
    STRONG_RELAY_ONLY = "STRONG_RELAY_ONLY"
    STRONG_R1SUM = "STRONG_R1SUM"


def check_domain(scheme: SchemeId, p: DetParams) -> None:
    n, m = p.n, p.m
    ok = {
        SchemeId.WEAK_R2SUM: m <= n,
        SchemeId.WEAK_SUM2R: n <= 2 * m and 3 * m < 2 * n,
        SchemeId.STRONG_RELAY_ONLY: m > n,
        SchemeId.STRONG_R1SUM: m > 2 * n,
    }[scheme]
    if not ok:
        raise SchemeDomain(f"{scheme.value} is not defined for n={n}, m={m}")


def target_rates(scheme: SchemeId, p: DetParams) -> RatePair:
    n, m = p.n, p.m
    return {
        SchemeId.WEAK_R2SUM: RatePair(n - m, n),
        SchemeId.WEAK_SUM2R: RatePair(m, 2 * n - 2 * m),
        SchemeId.STRONG_RELAY_ONLY: RatePair(0, m),
        SchemeId.STRONG_R1SUM: RatePair(n, m - n),
    }[scheme]


def closed_form_rates(scheme: SchemeId, p: DetParams, B: int) -> RatePair:
    """Exact rates after B blocks, accounting for the silent boundary blocks."""
    n, m = p.n, p.m
    f = Fraction(B - 1, B)
    if scheme is SchemeId.STRONG_R1SUM:
        return RatePair(f * n, Fraction(B * n + (B - 1) * (m - 2 * n), B))
    t = target_rates(scheme, p)
    return RatePair(f * t.r1, f * t.r2)


# -- segment layouts ---------------------------------------------------------

class Layout:
    """Named bit segments packed top (level 1) to bottom."""

    def __init__(self, q: int, segments: list[tuple[str, int]]):
        self.q = q
        self.segments = segments
        total = sum(k for _, k in segments)
        assert total <= q, (segments, q)
        self._where: dict[str, list[tuple[int, int]]] = {}
        top = 0
        for name, k in segments:
            # (shift from the bottom, mask)
            self._where.setdefault(name, []).append((q - top - k, (1 << k) - 1))
            top += k

        self._shifts = tuple((name, tuple(s for s, _ in places)) for name, places in self._where.items())

    def pack(self, **vals: int) -> int:
        v = 0
        for name, shifts in self._shifts:
            x = vals.get(name)
            if x:
                for s in shifts:
                    v |= x << s
        return v

    def get(self, v: int, name: str, which: int = 0) -> int:
        shift, mask = self._where[name][which]
        return (v >> shift) & mask


@dataclass(frozen=True)
class SimResult:
    blocks: int
    decode_ok: bool
    achieved: RatePair
    target: RatePair


class _Run:
    """Shared state for one simulation: messages, channel uses, tallies."""

    def __init__(self, scheme: SchemeId, p: DetParams, B: int, seed: int, labels: bool = False):
        if B < 2:
            raise ValueError("need at least two blocks")
        check_domain(scheme, p)
        self.scheme = scheme
        self.p, self.B, self.q = p, B, p.q
        self.rng = random.Random(seed)
        self.x1: list[int] = []
        self.x2: list[int] = []
        self.y1: list[int] = []
        self.y2: list[int] = []
        self.bits = [0, 0]
        self.ok = True
        self.decoded = [{"D1": [], "D2": []} for _ in range(B)] if labels else None
        self._sd, self._sc = p.q - p.n, p.q - p.m

    def msgs(self, k: int, count: int) -> list[int]:
        return [self.rng.getrandbits(k) for _ in range(count)] if k else [0] * count

    def send(self, x1: int, x2: int) -> tuple[int, int]:
        # same law as det_model.channel_int, inlined for the hot loop
        sd, sc = self._sd, self._sc
        y1 = (x1 >> sd) ^ (x2 >> sc)
        y2 = (x2 >> sd) ^ (x1 >> sc)
        self.x1.append(x1)
        self.x2.append(x2)
        self.y1.append(y1)
        self.y2.append(y2)
        return y1, y2

    def score(self, rx: int, seg: str, blocks: range, got: list[int], sent: list[int], k: int,
              msg_block: int = 0) -> None:
        """Compare decoded segments against what was sent.

        ``blocks`` are 0-based channel uses the segments were read from;
        ``msg_block`` shifts the label when a block carries an older message.
        Only user-``rx`` messages count toward its rate.
        """
        if k == 0:
            return
        if got != sent:
            self.ok = False
        self.bits[rx - 1] += k * len(got)
        if self.decoded is not None:
            for b in blocks:
                self.decoded[b][f"D{rx}"].append(f"{seg}[{b + 1 + msg_block}]")


def _weak_r2sum(run: _Run):
    p, B, q = run.p, run.B, run.q
    n, m = p.n, p.m
    L = Layout(q, [("r", m), ("p", n - m)])
    r2 = run.msgs(m, B - 1) + [0]
    p2 = run.msgs(n - m, B - 1) + [0]
    p1 = [0] + run.msgs(n - m, B - 1)
    low = (1 << m) - 1

    relay = 0  # what T1 learned through feedback in the previous block
    for i in range(B):
        x1 = L.pack(r=relay, p=p1[i]) if i > 0 else 0
        y1, _ = run.send(x1, L.pack(r=r2[i], p=p2[i]))
        # y1 xor own signal leaves the top m bits of x2 in the bottom m levels
        relay = (y1 ^ x1) & low

    # D2 forward: the bottom m levels carry T1's copy of the previous relay
    got_r, got_p, known = [], [], 0
    for y in run.y2[:-1]:
        x2_hat = y ^ known
        known = L.get(x2_hat, "r")
        got_r.append(known)
        got_p.append(L.get(x2_hat, "p"))
    blocks = range(B - 1)
    run.score(2, "r2", blocks, got_r, r2[:-1], m)
    run.score(2, "p2", blocks, got_p, p2[:-1], n - m)

    # D1 backward: block B carries no fresh relay, so start there
    got, future = [], 0
    for y in reversed(run.y1[1:]):
        x1_hat = y ^ future
        got.append(L.get(x1_hat, "p"))
        future = L.get(x1_hat, "r")  # r2 of the previous block, forwarded in this one
    got.reverse()
    run.score(1, "p1", range(1, B), got, p1[1:], n - m)


def _weak_sum2r(run: _Run):
    p, B, q = run.p, run.B, run.q
    n, m = p.n, p.m
    kc, kr, kp = 2 * m - n, 2 * n - 3 * m, n - m
    # common segment appears twice on purpose
    L = Layout(q, [("c", kc), ("r", kr), ("c", kc), ("p", kp)])
    c2 = run.msgs(kc, B - 1) + [0]
    r2 = run.msgs(kr, B - 1) + [0]
    p2 = run.msgs(kp, B - 1) + [0]
    c1 = [0] + run.msgs(kc, B - 1)
    p1 = [0] + run.msgs(kp, B - 1)

    relay = 0
    for i in range(B):
        x1 = L.pack(c=c1[i], r=relay, p=p1[i]) if i > 0 else 0
        y1, _ = run.send(x1, L.pack(c=c2[i], r=r2[i], p=p2[i]))
        # T1 strips its own signal and realigns the top m levels of x2
        relay = L.get((y1 ^ x1) << (n - m), "r")

    def split(y: int, known_relay: int):
        """Peel [c, r, c^c', p^(r', c')] from the top down, given the other side's relay r'."""
        c_top = L.get(y, "c", 0)
        c_other = L.get(y, "c", 1) ^ c_top
        p_own = L.get(y, "p") ^ ((known_relay << kc) | c_other)
        return c_top, L.get(y, "r"), p_own

    # D2 forward: the bottom of block i carries T1's relay of block i-1, already known
    gc, gr, gp, known = [], [], [], 0
    for y in run.y2[:-1]:
        c, known, pp = split(y, known)
        gc.append(c)
        gr.append(known)
        gp.append(pp)
    blocks = range(B - 1)
    run.score(2, "c2", blocks, gc, c2[:-1], kc)
    run.score(2, "r2", blocks, gr, r2[:-1], kr)
    run.score(2, "p2", blocks, gp, p2[:-1], kp)

    # D1 backward: the bottom of block i carries T2's fresh relay, learned from block i+1
    gc, gp, future = [], [], 0
    for y in reversed(run.y1[1:]):
        c, future, pp = split(y, future)
        gc.append(c)
        gp.append(pp)
    gc.reverse()
    gp.reverse()
    run.score(1, "c1", range(1, B), gc, c1[1:], kc)
    run.score(1, "p1", range(1, B), gp, p1[1:], kp)


def _strong_r1sum(run: _Run):
    p, B, q = run.p, run.B, run.q
    n, m = p.n, p.m
    kr = m - 2 * n
    L = Layout(q, [("p", n), ("r", kr), ("z", n)])
    p2 = run.msgs(n, B)
    r2 = run.msgs(kr, B - 1) + [0]
    p1 = [0] + run.msgs(n, B - 1)

    relay = 0
    for i in range(B):
        x1 = L.pack(p=p1[i], r=relay) if i > 0 else 0
        y1, _ = run.send(x1, L.pack(p=p2[i], r=r2[i]))
        relay = L.get(y1 ^ (x1 >> (m - n)), "r")

    # both receivers decode forward: y1 = [p2, r2_i, p1], y2 = [p1, r2_{i-1}, p2]
    Y = Layout(q, [("a", n), ("r", kr), ("b", n)])
    run.score(1, "p1", range(1, B), [Y.get(y, "b") for y in run.y1[1:]], p1[1:], n)
    run.score(2, "p2", range(B), [Y.get(y, "b") for y in run.y2], p2, n)
    run.score(2, "r2", range(1, B), [Y.get(y, "r") for y in run.y2[1:]], r2[:-1], kr, msg_block=-1)


def _strong_relay_only(run: _Run):
    p, B = run.p, run.B
    n, m = p.n, p.m
    r = run.msgs(m, B - 1) + [0]

    relay = 0
    for i in range(B):
        x1 = relay if i > 0 else 0
        y1, _ = run.send(x1, r[i])
        relay = y1 ^ (x1 >> (m - n))  # equals x2, since the cross link is unshifted

    # D2 backward: block B holds only T1's copy of the last relay
    got, future = [], 0
    for y in reversed(run.y2[1:]):
        future = y ^ (future >> (m - n))
        got.append(future)
    got.reverse()
    run.score(2, "r2", range(1, B), got, r[:-1], m, msg_block=-1)


_SCHEMES = {
    SchemeId.WEAK_R2SUM: _weak_r2sum,
    SchemeId.WEAK_SUM2R: _weak_sum2r,
    SchemeId.STRONG_R1SUM: _strong_r1sum,
    SchemeId.STRONG_RELAY_ONLY: _strong_relay_only,
}


def _run(scheme, p: DetParams, B: int, seed: int, labels: bool = False) -> _Run:
    scheme = SchemeId(scheme)
    run = _Run(scheme, p, B, seed, labels)
    _SCHEMES[scheme](run)
    return run


def simulate(scheme, p: DetParams, B: int, seed: int = 0) -> SimResult:
    run = _run(scheme, p, B, seed)
    achieved = RatePair(Fraction(run.bits[0], B), Fraction(run.bits[1], B))
    return SimResult(B, run.ok, achieved, target_rates(run.scheme, p))


def trace(scheme, p: DetParams, B: int, seed: int = 0) -> list[dict]:
    run = _run(scheme, p, B, seed, labels=True)
    q = p.q
    bits = lambda v: "".join(map(str, unpack(v, q)))
    return [
        {
            "block": i + 1,
            "x1": bits(run.x1[i]),
            "x2": bits(run.x2[i]),
            "y1": bits(run.y1[i]),
            "y2": bits(run.y2[i]),
            "decoded": run.decoded[i],
        }
        for i in range(B)
    ]


def trace_jsonl(records: list[dict]) -> str:
    return "".join(json.dumps(r) + "\n" for r in records)


def trace_table(records: list[dict]) -> str:
    """Aligned text table, one row per block."""
    if not records:
        return ""
    w = max(len(records[0]["x1"]), 2)
    head = f"{'blk':>4}  {'x1':<{w}}  {'x2':<{w}}  {'y1':<{w}}  {'y2':<{w}}  decoded"
    rows = [head, "-" * len(head)]
    for r in records:
        dec = "; ".join(f"{k}: {','.join(v)}" for k, v in r["decoded"].items() if v)
        rows.append(f"{r['block']:>4}  {r['x1']:<{w}}  {r['x2']:<{w}}  {r['y1']:<{w}}  {r['y2']:<{w}}  {dec}")
    return "\n".join(rows)
