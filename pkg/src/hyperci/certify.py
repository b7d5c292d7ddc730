"""Grid certification: exact brute-force verification of every claim.

Runs the full pipeline on a small grid of (N, n, alpha) instances with
alpha as an exact rational, checks each structural and optimality claim
against the oracle module's naive searches, and verifies the supporting
distribution properties exhaustively in integer arithmetic. Produces a text
report with one line per check and instance counts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import oracle
from .acceptance import amo_half, reflect_full
from .core import Params, mode, support, weight_table
from .invert import acceptance_of, invert
from .monotonize import adjust, center_interval, symmetrize
from .parallel import pmap
from .pivot import pivot_ci, pivot_table

DEFAULT_ALPHAS = (
    Fraction(1, 100),
    Fraction(1, 20),
    Fraction(1, 10),
    Fraction(1, 5),
    Fraction(3, 5),
)

MAX_FAILURES_KEPT = 12


@dataclass
class Tally:
    """Outcome of one named check, merged across instances."""

    name: str
    instances: int = 0
    failures: list = field(default_factory=list)
    metrics: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, count: int, failure: str = None):
        self.instances += count
        if failure and len(self.failures) < MAX_FAILURES_KEPT:
            self.failures.append(failure)


class Tallies(dict):
    def hit(self, name: str, count: int = 1, failure: str = None):
        self.setdefault(name, Tally(name)).add(count, failure)

    def metric_max(self, name: str, key: str, value, tag):
        t = self.setdefault(name, Tally(name))
        cur = t.metrics.get(key)
        if cur is None or value > cur[0]:
            t.metrics[key] = (value, tag)

    def metric_count(self, name: str, key: str, inc: int = 1):
        t = self.setdefault(name, Tally(name))
        t.metrics[key] = t.metrics.get(key, 0) + inc


@dataclass
class CertificationReport:
    checks: list
    grid: str

    @property
    def ok(self) -> bool:
        return all(t.ok for t in self.checks)

    def metric(self, check: str, key: str):
        for t in self.checks:
            if t.name == check:
                return t.metrics.get(key)
        return None

    @property
    def gap_instances(self) -> int:
        """Even-parity instances where |C*| sits one above the set bound."""
        return self.metric("size-optimality", "set_gap_instances") or 0

    @property
    def max_shift(self) -> int:
        found = self.metric("shift-metrics", "max_delta")
        return found[0] if found else 0

    def render(self) -> str:
        lines = [f"certification grid: {self.grid}"]
        for t in sorted(self.checks, key=lambda t: t.name):
            status = "FAIL" if not t.ok else ("INFO" if t.instances == 0 else "PASS")
            extra = "".join(
                f", {k}={v}" for k, v in sorted(t.metrics.items())
            )
            lines.append(f"{status} {t.name}: {t.instances} checks{extra}")
            for f in t.failures:
                lines.append(f"    failure: {f}")
        lines.append("RESULT: " + ("all checks passed" if self.ok else "FAILURES FOUND"))
        return "\n".join(lines) + "\n"


def _interval_masses(fam, prefix_by_m):
    for M, (a, b) in enumerate(zip(fam.lower, fam.upper)):
        lo, _, pre = prefix_by_m[M]
        yield M, pre[b - lo + 1] - pre[a - lo]


def _prefix_tables(p: Params):
    out = []
    for M in range(p.N + 1):
        lo, hi = support(M, p)
        w = weight_table(M, p)
        pre = [0]
        for x in w:
            pre.append(pre[-1] + x)
        out.append((lo, hi, pre))
    return out


def check_instance(cfg: dict, item: tuple) -> Tallies:
    """All pipeline checks for one (N, n, alpha) instance."""
    N, n, alpha = item
    t = Tallies()
    tag = f"(N={N}, n={n}, alpha={alpha})"
    p = Params(N, n, alpha)
    bar = (1 - alpha) * p.total_weight
    prefix = _prefix_tables(p)
    k = N // 2

    half = amo_half(p)
    adjusted, trace = adjust(half)
    sym = symmetrize(adjusted, p)
    tbl = invert(sym)
    ptbl = pivot_table(p)

    # greedy output must have minimum cardinality and, within that
    # cardinality, maximal probability
    cards = []
    for M in range(k + 1):
        card, _, best = oracle.min_level_interval(M, p, alpha)
        cards.append(card)
        ours = half.length(M)
        lo, _, pre = prefix[M]
        a, b = half.interval(M)
        mass = Fraction(pre[b - lo + 1] - pre[a - lo], p.total_weight)
        if ours != card:
            t.hit("greedy-min-cardinality", 1, f"{tag} M={M}: got {ours}, oracle {card}")
        else:
            t.hit("greedy-min-cardinality", 1)
        if mass != best:
            t.hit("greedy-max-probability", 1, f"{tag} M={M}: mass {mass} != {best}")
        else:
            t.hit("greedy-max-probability", 1)

    # one-endpoint monotonicity violations only (raw family), and centers
    # sitting at or below n/2 before symmetrization
    ok = all(
        not (half.lower[M2] < half.lower[M1] and half.upper[M2] < half.upper[M1])
        for M1 in range(k + 1)
        for M2 in range(M1 + 1, k + 1)
    )
    ok = ok and all(
        half.lower[M] + half.upper[M] <= n for M in range(k + 1) if 2 * M < N
    )
    t.hit("raw-structure", 1, None if ok else f"{tag} raw family structure broken")

    # shift bookkeeping
    t.hit(
        "shift-disjoint-sets",
        1,
        None if not (trace.set_lower & trace.set_upper) else f"{tag} sets overlap",
    )
    ok = all(adjusted.length(M) == half.length(M) for M in range(k + 1))
    t.hit("shift-length-preserved", 1, None if ok else f"{tag} lengths changed")
    bad = [M for M, m in _interval_masses(adjusted, prefix) if m < bar]
    t.hit("shift-level-preserved", 1, None if not bad else f"{tag} M={bad[:3]}")
    t.metric_max("shift-metrics", "max_delta", trace.max_shift, tag)

    # center interval formulas (even N): the tail-scan h, the min-form
    # shortcut (asserted inside center_interval), and the max-form variant,
    # whose disagreements are flagged as a metric rather than failures
    if N % 2 == 0:
        a_c, b_c = adjusted.interval(k)
        try:
            h = center_interval(p, (a_c, b_c))[0]
            t.hit("center-formulas", 1)
        except ValueError as e:
            t.hit("center-formulas", 1, f"{tag}: {e}")
            h = min(a_c, n - b_c)
        if max(a_c, n - b_c) != h:
            t.metric_count("center-formulas", "maxform_disagreements")

    # symmetrized family: reflection, monotonicity (constructor-checked),
    # level at every M, and mirrored lengths
    bad = [M for M, m in _interval_masses(sym, prefix) if m < bar]
    ok = not bad and all(sym.length(M) == sym.length(N - M) for M in range(N + 1))
    t.hit("family-level", 1, None if ok else f"{tag} symmetrized level/length {bad[:3]}")

    refl = reflect_full(half)
    bad = [M for M, m in _interval_masses(refl, prefix) if m < bar]
    t.hit("reflect-level", 1, None if not bad else f"{tag} M={bad[:3]}")

    # inversion: duality round trips, total-size double count, endpoints
    dual = acceptance_of(tbl)
    ok = (
        tbl.total_size == sym.total_size()
        and dual.lower == sym.lower
        and dual.upper == sym.upper
        and invert(dual) == tbl
        and tbl.lower[0] == 0
        and tbl.upper[n] == N
    )
    t.hit("inversion-duality", 1, None if ok else f"{tag} inversion inconsistent")

    # exact coverage for both methods at every M
    bad = [
        M
        for M in range(N + 1)
        for tb in (tbl, ptbl)
        if oracle.exact_coverage(tb, M) < 1 - alpha
    ]
    t.hit("coverage-exactness", 1, None if not bad else f"{tag} M={bad[:3]}")

    # pivot table rows equal the per-x binary search; on small N also the
    # linear-scan fallback and the monotone-tails premise
    ok = all(pivot_ci(x, p) == ptbl.interval(x) for x in range(n + 1))
    t.hit("pivot-consistency", 1, None if ok else f"{tag} pivot rows differ")
    if N <= cfg["pivot_cap"]:
        ok = all(pivot_ci(x, p, scan=True) == ptbl.interval(x) for x in range(n + 1))
        t.hit("pivot-scan-differential", 1, None if ok else f"{tag} scan differs")
        mono = True
        for x in range(n + 1):
            prev_up = -1
            prev_low = None
            for M in range(N + 1):
                lo, hi, pre = prefix[M]
                up = pre[-1] - pre[min(max(x - lo, 0), hi - lo + 1)]
                low = pre[min(max(x + 1 - lo, 0), hi - lo + 1)]
                if up < prev_up or (prev_low is not None and low > prev_low):
                    mono = False
                prev_up, prev_low = up, low
        t.hit("pivot-tail-monotonicity", 1, None if mono else f"{tag} tails not monotone")

    # size optimality versus the oracle bounds
    full_cards = cards + [cards[N - M] for M in range(k + 1, N + 1)]
    bound_int = sum(full_cards)
    bound_set = bound_int
    if N % 2 == 0:
        sym_set = oracle.min_symmetric_set_size(p, alpha)
        lo, hi = support(k, p)
        _, _, pre = prefix[k]
        best = None
        for c in range(n // 2, -1, -1):
            a, b = max(c, lo), min(n - c, hi)
            if pre[b - lo + 1] - pre[a - lo] >= bar:
                best = n - 2 * c + 1
                break
        bound_set += sym_set - cards[k]
        bound_int += best - cards[k]
    size = tbl.total_size
    gap = size - bound_set
    if gap not in (0, 1):
        t.hit("size-optimality", 1, f"{tag} |C*|={size} vs set bound {bound_set}")
    elif gap == 1 and (N % 2 or n % 2):
        t.hit("size-optimality", 1, f"{tag} gap with odd N or n")
    elif size != bound_int:
        t.hit("size-optimality", 1, f"{tag} |C*|={size} vs interval bound {bound_int}")
    else:
        t.hit("size-optimality", 1)
        if gap == 1:
            t.metric_count("size-optimality", "set_gap_instances")

    if (N, n, alpha) == (20, 6, Fraction(3, 5)):
        ok = gap == 1 and sym.interval(10) == (2, 4)
        t.hit("adversarial-even-case", 1, None if ok else f"{tag} expected +1 gap at [2,4]")

    if N % 2 == 0 and n <= cfg["subset_cap"]:
        ok = oracle.min_symmetric_set_size_bruteforce(p, alpha) == oracle.min_symmetric_set_size(p, alpha)
        t.hit("symmetric-set-bruteforce", 1, None if ok else f"{tag} greedy != subset search")
    return t


def check_distribution(cfg: dict, item: tuple) -> Tallies:
    """Alpha-free distribution properties for one (N, n) pair, exhaustively."""
    N, n = item
    t = Tallies()
    tag = f"(N={N}, n={n})"
    p = Params(N, n, 0.5)  # alpha unused by these checks
    prefix = _prefix_tables(p)
    weights = [weight_table(M, p) for M in range(N + 1)]
    supports = [support(M, p) for M in range(N + 1)]
    property_cap = N <= cfg["property_cap"]
    ratio_cap = N <= cfg["ratio_cap"]

    def w_of(M, x):
        lo, hi = supports[M]
        return weights[M][x - lo] if lo <= x <= hi else 0

    if property_cap:
        # pmf reflection across (M, x) -> (N-M, n-x)
        ok = all(
            w_of(M, x) == w_of(N - M, n - x)
            for M in range(N + 1)
            for x in range(n + 1)
        )
        t.hit("pmf-reflection", 1, None if ok else f"{tag} reflection broken")

        # strict unimodality with the documented argmax pair
        ok = True
        for M in range(N + 1):
            lo, hi = supports[M]
            w = weights[M]
            m2 = mode(M, p)
            num = (n + 1) * (M + 1)
            m1 = m2 - 1 if num % (N + 2) == 0 else m2
            for x in range(lo, min(m1, hi)):
                ok = ok and w[x - lo] < w[x + 1 - lo]
            for x in range(max(m2, lo), hi):
                ok = ok and w[x - lo] > w[x + 1 - lo]
            if m1 != m2 and lo <= m1 and m2 <= hi:
                ok = ok and w[m1 - lo] == w[m2 - lo]
            peak = max(w)
            ok = ok and lo <= m2 <= hi and w[m2 - lo] == peak
        t.hit("pmf-unimodality", 1, None if ok else f"{tag} unimodality broken")

        # monotone likelihood ratio over the common support
        ok = True
        for M1 in range(N + 1):
            for M2 in range(M1 + 1, N + 1):
                lo = max(supports[M1][0], supports[M2][0])
                hi = min(supports[M1][1], supports[M2][1])
                for x in range(lo, hi):
                    ok = ok and (
                        w_of(M2, x) * w_of(M1, x + 1) <= w_of(M2, x + 1) * w_of(M1, x)
                    )
        t.hit("mlr", 1, None if ok else f"{tag} MLR broken")

        # difference identity for interval masses at adjacent M
        ok = True
        for M in range(N):
            _, _, pre = prefix[M]
            _, _, pre2 = prefix[M + 1]
            lo, hi = supports[M]
            lo2, hi2 = supports[M + 1]

            def mass(prei, loi, hii, a, b):
                a, b = max(a, loi), min(b, hii)
                return 0 if a > b else prei[b - loi + 1] - prei[a - loi]

            for a in range(n + 1):
                for b in range(a, n + 1):
                    lhs = (N - M) * (
                        mass(pre2, lo2, hi2, a, b) - mass(pre, lo, hi, a, b)
                    )
                    rhs = (n - a + 1) * w_of(M, a - 1) - (n - b) * w_of(M, b)
                    ok = ok and lhs == rhs
        t.hit("interval-mass-identity", 1, None if ok else f"{tag} identity broken")

    if ratio_cap:
        # pmf ratios strictly increasing in M where both stay positive
        ok = True
        for x1 in range(n + 1):
            for x2 in range(x1 + 1, n + 1):
                if x2 - x1 >= N - n:
                    continue
                for M in range(x2, N - n + x1):
                    ok = ok and (
                        w_of(M, x2) * w_of(M + 1, x1) < w_of(M + 1, x2) * w_of(M, x1)
                    )
        t.hit("ratio-monotonicity", 1, None if ok else f"{tag} ratio order broken")

        # interval mass rises to the peak M then falls
        ok = True
        for a in range(n + 1):
            for b in range(a, n + 1):
                if b - a >= n:
                    continue
                peak = oracle.unimodal_peak(a, b, p)

                def mass_at(M):
                    lo, hi = supports[M]
                    _, _, pre = prefix[M]
                    aa, bb = max(a, lo), min(b, hi)
                    return 0 if aa > bb else pre[bb - lo + 1] - pre[aa - lo]

                for M in range(N):
                    if M < peak and mass_at(M + 1) < mass_at(M):
                        ok = False
                    if M >= peak and mass_at(M + 1) > mass_at(M):
                        ok = False
        t.hit("interval-peak-shape", 1, None if ok else f"{tag} peak shape broken")

    if property_cap:
        # shifting an interval right never moves its peak left, and beyond
        # the shifted peak the shifted interval dominates
        ok = True
        peaks = {}
        for a in range(n):
            for b in range(a, n):
                peaks[(a, b)] = oracle.unimodal_peak(a, b, p)
        for a in range(n):
            for b in range(a, n):
                for d in range(1, n - b + 1):
                    right = (
                        peaks[(a + d, b + d)]
                        if b + d < n
                        else oracle.unimodal_peak(a + d, b + d, p)
                    )
                    if peaks[(a, b)] > right:
                        ok = False
                    for M in range(right, N + 1):
                        lo, hi = supports[M]
                        _, _, pre = prefix[M]

                        def mass(aa, bb):
                            aa, bb = max(aa, lo), min(bb, hi)
                            return 0 if aa > bb else pre[bb - lo + 1] - pre[aa - lo]

                        if mass(a, b) > mass(a + d, b + d):
                            ok = False
        t.hit("peak-shift", 1, None if ok else f"{tag} shift property broken")

        # oracle-optimal intervals for increasing M couple their endpoints
        for alpha in cfg["alphas"]:
            ints = [oracle.min_level_interval(M, p, alpha)[1] for M in range(N + 1)]
            ok = all(
                not (ints[M2][0] < ints[M1][0] and ints[M2][1] < ints[M1][1])
                for M1 in range(N + 1)
                for M2 in range(M1 + 1, N + 1)
            )
            t.hit("optimal-interval-coupling", 1, None if ok else f"{tag} a={alpha}")

    if N <= cfg["subset_cap"]:
        # a window always achieves the best mass any same-size subset can
        # (the k largest pmf values); tiny supports re-verify by enumeration
        ok = True
        for M in range(N + 1):
            lo, hi = supports[M]
            w = weights[M]
            size = hi - lo + 1
            _, _, pre = prefix[M]
            best_window = [
                max(pre[s + length] - pre[s] for s in range(size - length + 1))
                for length in range(1, size + 1)
            ]
            ranked = sorted(w, reverse=True)
            best_subset = []
            run = 0
            for x in ranked:
                run += x
                best_subset.append(run)
            ok = ok and best_window == best_subset
            if size <= 8:
                for mask in range(1, 1 << size):
                    bits = bin(mask).count("1")
                    total = sum(w[i] for i in range(size) if mask >> i & 1)
                    ok = ok and total <= best_window[bits - 1]
        t.hit("maximizing-sets-are-intervals", 1, None if ok else f"{tag} subset beats window")
    return t


def _merge(into: Tallies, part: Tallies):
    for name, tally in part.items():
        target = into.setdefault(name, Tally(name))
        target.instances += tally.instances
        for f in tally.failures:
            if len(target.failures) < MAX_FAILURES_KEPT:
                target.failures.append(f)
        for key, val in tally.metrics.items():
            if key.endswith("instances") or key.endswith("disagreements"):
                target.metrics[key] = target.metrics.get(key, 0) + val
            else:
                cur = target.metrics.get(key)
                if cur is None or val > cur:
                    target.metrics[key] = val


def run_certification(
    max_population: int = 40,
    alphas=DEFAULT_ALPHAS,
    populations=None,
    property_cap: int = 20,
    ratio_cap: int = 25,
    subset_cap: int = 12,
    pivot_cap: int = 20,
    workers: int = 0,
) -> CertificationReport:
    """Run every check over the grid; N values default to 1..max_population."""
    if max_population > oracle.N_CAP:
        raise ValueError(f"grid capped at N <= {oracle.N_CAP}")
    ns = sorted(populations) if populations else range(1, max_population + 1)
    if populations and max(ns) > oracle.N_CAP:
        raise ValueError(f"grid capped at N <= {oracle.N_CAP}")
    alphas = tuple(Fraction(a) if not isinstance(a, Fraction) else a for a in alphas)
    cfg = {
        "alphas": alphas,
        "property_cap": property_cap,
        "ratio_cap": ratio_cap,
        "subset_cap": subset_cap,
        "pivot_cap": pivot_cap,
    }
    instances = [(N, n, a) for N in ns for n in range(1, N + 1) for a in alphas]
    pairs = [
        (N, n)
        for N in ns
        for n in range(1, N + 1)
        if N <= max(property_cap, ratio_cap, subset_cap)
    ]
    merged = Tallies()
    for part in pmap(check_instance, cfg, instances, workers):
        _merge(merged, part)
    for part in pmap(check_distribution, cfg, pairs, workers):
        _merge(merged, part)
    merged.setdefault("size-optimality", Tally("size-optimality")).metrics.setdefault(
        "set_gap_instances", 0
    )
    grid = (
        f"N in {{{', '.join(str(N) for N in ns)}}}"
        if populations
        else f"N = 1..{max_population}"
    )
    grid += f", n = 1..N, alphas = {', '.join(str(a) for a in alphas)}"
    return CertificationReport(checks=list(merged.values()), grid=grid)
