"""Verification suites.  Each returns a :class:`VerificationReport`; a report
with failures means a property was falsified, one with ``undecided`` cases
means a search ran out of budget before it could decide."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import asdict, dataclass, field

from .errors import BudgetExceeded, ClaimViolation
from .gadgets import build_sum_gadget, gamma_colouring
from .graph import ClosedWalk, Graph, VertexMap, is_connected, make_complete, make_cycle, make_path, tensor_product
from .homology import cycle_class, flat_profile, h1_presentation
from .homsearch import mix_bruteforce, sample_homs
from .reduction import build_Gstar, extract_colouring, verify_nt_basis, witness_hom
from .surgery import verify_surgery_lemmas

SUITES = ("slice-invariance", "surgery-lemmas", "sum-gadget", "flat-equals-constant-component", "end-to-end")


@dataclass
class Failure:
    case: str
    seed: int | None
    detail: str


@dataclass
class VerificationReport:
    suite: str
    seed: int
    cases: int = 0
    failures: list = field(default_factory=list)
    undecided: int = 0
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, case: str, detail: str, seed: int | None = None) -> None:
        self.failures.append(Failure(case, seed, detail))

    def exit_code(self) -> int:
        if self.failures:
            return 1
        return 3 if self.undecided else 0

    def to_dict(self, with_timings: bool = False) -> dict:
        d = asdict(self)
        d["ok"] = self.ok
        if not with_timings:
            d.pop("timings")
        return d


def _classes_match(P, walks, vals) -> bool:
    first = None
    for w in walks:
        c = cycle_class(P, w.mapped(vals))
        if first is None:
            first = c
        elif c != first:
            return False
    return True


# -- suites ----------------------------------------------------------------


def slice_invariance(seed: int = 0, trials: int = 1200) -> VerificationReport:
    """Every slice of a sampled map ``P_l x C_g -> H`` has the same class."""
    rep = VerificationReport("slice-invariance", seed)
    rng = random.Random(seed)
    targets = [make_cycle(k) for k in (4, 5, 6)]
    shapes = [(l, g) for l in range(1, 5) for g in (4, 5)]
    P_H = {H.n: h1_presentation(H) for H in targets}
    combos = [(l, g, H) for l, g in shapes for H in targets]
    per = max(1, -(-trials // len(combos)))
    winding = 0
    for l, g, H in combos:
        X = tensor_product(make_path(l), make_cycle(g))
        slices = [_slice(l, g, t) for t in range(l + 1)]
        for k in range(per):
            s = rng.randrange(2**31)
            pins = None
            if k % 2 and g == H.n:
                # force slice 0 onto a winding map so non-zero classes get exercised
                rot, sign = rng.randrange(g), rng.choice((1, -1))
                pins = {p: (rot + sign * p) % g for p in range(g)}
            try:
                vals = sample_homs(X, H, pins, k=1, seed=s).maps[0]
            except BudgetExceeded:
                rep.undecided += 1
                continue
            rep.cases += 1
            if any(cycle_class(P_H[H.n], slices[0].mapped(vals))):
                winding += 1
            if not _classes_match(P_H[H.n], slices, vals):
                rep.fail(f"P{l}xC{g}->C{H.n}", f"slice classes differ for map {list(vals)}", s)
    rep.notes.append(f"{rep.cases} sampled maps, {winding} with non-zero slice class")
    return rep


def _slice(l: int, g: int, t: int) -> ClosedWalk:
    return ClosedWalk(tuple(t * g + p for p in range(g)))


def surgery_lemmas(seed: int = 0, trials: int = 240) -> VerificationReport:
    rep = VerificationReport("surgery-lemmas", seed)
    sr = verify_surgery_lemmas(seed, trials)
    rep.cases = len(sr.cases)
    for c in sr.failures:
        rep.fail(c.lemma, c.detail, c.seed)
    rep.notes.append("per lemma: " + ", ".join(f"{k}={v}" for k, v in sr.counts().items()))
    return rep


SUM_GADGET_SHAPES = ((2, 4), (3, 4), (2, 5))


def sum_gadget(seed: int = 0, trials: int = 60, shapes=SUM_GADGET_SHAPES) -> VerificationReport:
    """Build-time invariants, the Gamma colourings, and sampled maps out of ``S_s``."""
    rep = VerificationReport("sum-gadget", seed)
    rng = random.Random(seed)
    for s, g in shapes:
        name = f"S{s}(g={g})"
        try:
            S = build_sum_gadget(s, g)
        except ClaimViolation as exc:
            rep.fail(name, str(exc))
            continue
        rep.cases += 1
        rep.notes.append(f"{name}: ell={S.ell}, |V|={S.graph.n}")
        Z = make_cycle(g)
        P_Z = h1_presentation(Z)
        P_S = h1_presentation(S.graph)
        for i in range(s):
            rep.cases += 1
            try:
                G_i = gamma_colouring(S, i)
            except ClaimViolation as exc:
                rep.fail(f"{name} Gamma_{i}", str(exc))
                continue
            if all(not any(c) for c in flat_profile(G_i, P_S, P_Z)):
                rep.fail(f"{name} Gamma_{i}", "Gamma_i is flat")
        _sample_gadget(rep, S, Z, P_Z, rng, trials, name)
        if s == 2:
            _twist_exclusion(rep, S, Z, P_Z, rng, trials, name)
    return rep


def _sample_gadget(rep, S, H, P_H, rng, trials, name) -> None:
    """Sum identity, triviality on gadget cycles when ``Z`` is trivial, and unit classes on end cycles."""
    Zv = S.Z.vertices
    for k in range(trials):
        s = rng.randrange(2**31)
        pins = None
        if k % 3 == 0:
            pins = {Zv[j]: j for j in range(S.g)}
        elif k % 3 == 1:
            i = rng.randrange(S.s)
            pins = {v: j for j, v in enumerate(S.A[i].vertices)}
        try:
            vals = sample_homs(S.graph, H, pins, k=1, seed=s).maps[0]
        except BudgetExceeded:
            rep.undecided += 1
            continue
        rep.cases += 1
        z = cycle_class(P_H, S.Z.mapped(vals))
        a = [cycle_class(P_H, w.mapped(vals)) for w in S.A]
        if list(z) != [sum(col) for col in zip(*a)]:
            rep.fail(name, f"[G(Z)]={z} but sum [G(A_i)]={a}", s)
        if not any(z):
            for t, w in enumerate(S.slices):
                if any(cycle_class(P_H, w.mapped(vals))):
                    rep.fail(name, f"[G(Z)]=0 but slice {t} is non-trivial", s)
        for c in [z] + a:
            if any(abs(x) > 1 for x in c) or sum(abs(x) for x in c) > 1:
                rep.fail(name, f"girth-length cycle with class {c}", s)


def _twist_exclusion(rep, S, H, P_H, rng, trials, name) -> None:
    """An ``S_2`` whose second end cycle is read backwards never carries ``(+e, -e)``."""
    g = S.g
    A0, A1 = S.A
    for k in range(trials):
        s = rng.randrange(2**31)
        sign = 1 if k % 2 == 0 else -1
        pins = {v: (sign * j) % g for j, v in enumerate(A0.vertices)}
        try:
            vals = sample_homs(S.graph, H, pins, k=1, seed=s).maps[0]
        except BudgetExceeded:
            rep.undecided += 1
            continue
        rep.cases += 1
        a = cycle_class(P_H, A0.mapped(vals))[0]
        # the glued cycle is A1 traversed as k -> g - k
        b = cycle_class(P_H, A1.reversed().mapped(vals))[0]
        if a and b and a == -b:
            rep.fail(name + " twisted", f"end classes ({a}, {b}) have opposite signs", s)


def connected_graphs(n: int, reflexive: bool = True):
    pairs = list(itertools.combinations(range(n), 2))
    for mask in range(1 << len(pairs)):
        es = [p for i, p in enumerate(pairs) if mask >> i & 1]
        G = Graph.build(n, es, reflexive=reflexive)
        if is_connected(G):
            yield G


def flat_equals_constant_component(
    seed: int = 0, trials: int = 0, limits=((4, 4), (5, 3))
) -> VerificationReport:
    """Exhaustively: ``phi`` is flat iff it shares a Hom-graph component with a constant map."""
    rep = VerificationReport("flat-equals-constant-component", seed)
    flat_only = const_only = 0
    for g, nmax in limits:
        H = make_cycle(g)
        P_H = h1_presentation(H)
        for n in range(1, nmax + 1):
            for G in connected_graphs(n):
                try:
                    mix = mix_bruteforce(G, H)
                except BudgetExceeded:
                    rep.undecided += 1
                    continue
                P_G = h1_presentation(G)
                const_comps = {mix.component_of[i] for i, m in enumerate(mix.maps) if len(set(m)) == 1}
                for i, m in enumerate(mix.maps):
                    rep.cases += 1
                    flat = all(not any(c) for c in flat_profile(VertexMap(G, H, m), P_G, P_H))
                    in_const = mix.component_of[i] in const_comps
                    if flat and not in_const:
                        flat_only += 1
                        rep.fail(f"G={sorted(G.edges)} H=C{g}", f"flat map {list(m)} outside the constant component")
                    elif in_const and not flat:
                        const_only += 1
                        rep.fail(f"G={sorted(G.edges)} H=C{g}", f"non-flat map {list(m)} in the constant component")
    rep.notes.append(f"{rep.cases} maps checked; flat-but-not-constant={flat_only}, constant-but-not-flat={const_only}")
    return rep


E2E_SOURCES = (("K1", make_complete(1)), ("K2", make_complete(2)), ("P3", make_path(3, reflexive=False)), ("K3", make_complete(3)))


def proper_colourings(G: Graph):
    for c in itertools.product(range(3), repeat=G.n):
        if all(c[u] != c[v] for u, v in G.edges):
            yield list(c)


def end_to_end(seed: int = 0, trials: int = 100, sources=E2E_SOURCES, negative: bool = True) -> VerificationReport:
    """The reduction on small sources with ``H`` the reflexive 4-cycle."""
    rep = VerificationReport("end-to-end", seed)
    H = make_cycle(4)
    P_H = h1_presentation(H)
    for name, G in sources:
        t0 = time.perf_counter()
        R = build_Gstar(G, H)
        nt = verify_nt_basis(R)
        rep.cases += 1
        if not nt.ok:
            rep.fail(name, "; ".join(nt.messages))
        P_G = h1_presentation(R.Gstar)
        for c in proper_colourings(G):
            rep.cases += 1
            try:
                phi = witness_hom(R, c)
                if all(not any(x) for x in flat_profile(phi, P_G, P_H)):
                    rep.fail(name, f"witness for {c} is flat")
                back = extract_colouring(R, phi, P_H)
                if back != c:
                    rep.fail(name, f"extracted {back} from the witness for {c}")
            except ClaimViolation as exc:
                rep.fail(name, f"colouring {c}: {exc}")
        rep.timings[name] = time.perf_counter() - t0
        rep.notes.append(f"{name}: |V(G*)|={R.Gstar.n}, plugs={len(R.plug_vertices)}, rank={nt.rank}")
    if negative:
        negative_sampling(rep, trials, seed)
    return rep


def negative_sampling(rep: VerificationReport, samples: int, seed: int) -> None:
    """Sampled maps ``G*(K4) -> C4`` must all be flat; this is evidence, not proof."""
    H = make_cycle(4)
    R = build_Gstar(make_complete(4), H)
    P_G = h1_presentation(R.Gstar)
    P_H = h1_presentation(H)
    t0 = time.perf_counter()
    try:
        hs = sample_homs(R.Gstar, H, k=samples, seed=seed)
    except BudgetExceeded as exc:
        rep.undecided += 1
        rep.notes.append(f"K4 sampling stopped early: {exc}")
        return
    nonflat = 0
    for m in hs.maps:
        rep.cases += 1
        if not all(not any(x) for x in flat_profile(VertexMap(R.Gstar, H, m), P_G, P_H)):
            nonflat += 1
            rep.fail("K4", f"sampled non-flat map (seed {seed})", seed)
    rep.timings["K4 sampling"] = time.perf_counter() - t0
    rep.notes.append(
        f"K4: {len(hs.maps)} sampled maps G*->C4 ({len(set(hs.maps))} distinct), {nonflat} non-flat; "
        "sampling only, not an exhaustive check"
    )


def run_suite(name: str, seed: int = 0, trials: int | None = None) -> VerificationReport:
    fn = {
        "slice-invariance": slice_invariance,
        "surgery-lemmas": surgery_lemmas,
        "sum-gadget": sum_gadget,
        "flat-equals-constant-component": flat_equals_constant_component,
        "end-to-end": end_to_end,
    }[name]
    t0 = time.perf_counter()
    rep = fn(seed) if trials is None else fn(seed, trials)
    rep.timings["total"] = time.perf_counter() - t0
    return rep
