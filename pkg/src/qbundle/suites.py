"""Named verification suites and the configuration that drives them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field, asdict
from fractions import Fraction

from .borel import borel_antipode_check, borel_context, qcentrality_check
from .gaussbundle import (Comodule, Permutation, cocycle_check, default_prop1_samples, gamma_hom_check,
                          gauss_decompose, gauss_verify, prop1_check, u_coinvariance_check,
                          u_stability_check, flag_ore_set)
from .orelocal import (OreFraction, OreNotFound, OreSet, coact_fraction, compat_check, nested_check,
                       ore_solve, ore_solve_linear, verify_witness)
from .qalgebra import (diamond_check, get_algebra, rho_borel, reduce_word, render_word, NcPoly)
from .qminor import (antipode_axiom_check, laplace_suite, minor_coproduct_check, qdet,
                     quasidet_suite, subsets)
from .report import INCONCLUSIVE, SuiteReport, stopwatch

SUITES = ("diamond", "laplace", "antipode", "quasidet", "ore", "thm9", "thm10", "thm11",
          "prop1", "cocycle", "compat", "nested")


class UnknownSuite(ValueError):
    pass


@dataclass
class Config:
    n: int = 2
    q: object = None  # None = symbolic, else a nonzero Fraction
    max_degree: int = 6
    ore_bound: int = 3
    sigmas: list = None  # None = all permutations of 1..n
    suites: list = field(default_factory=lambda: list(SUITES))
    seed: int = 0
    samples: int = 20
    stability_bound: int = 2
    quasidet_convention: str = "antipode"
    timing: bool = True

    def __post_init__(self):
        if self.n not in (1, 2, 3):
            raise ValueError("n must be 1, 2 or 3")
        if self.ore_bound < 1:
            raise ValueError("oreBound must be at least 1")
        if self.q is not None:
            self.q = Fraction(self.q)
            if self.q == 0:
                raise ValueError("q must be nonzero")
        if self.quasidet_convention not in ("antipode", "printed", "both"):
            raise ValueError("quasidet_convention must be antipode, printed or both")
        for s in self.permutations():
            if s.n != self.n:
                raise ValueError(f"sigma {s} is not a permutation of 1..{self.n}")

    def permutations(self):
        if self.sigmas is None:
            return Permutation.all(self.n)
        out = []
        for s in self.sigmas:
            if isinstance(s, Permutation):
                out.append(s)
            elif str(s) == "id":
                out.append(Permutation.identity(self.n))
            elif str(s) == "w0":
                out.append(Permutation.reversal(self.n))
            else:
                out.append(Permutation.parse(str(s)))
        return out

    def as_dict(self):
        d = asdict(self)
        d["q"] = "symbolic" if self.q is None else str(self.q)
        d["sigmas"] = [str(s) for s in self.permutations()]
        return d


def _alg(cfg):
    return get_algebra(cfg.n, cfg.q)


# ----------------------------------------------------------------------
# individual suites
# ----------------------------------------------------------------------

def suite_diamond(cfg):
    n = cfg.n
    full = diamond_check(n)
    borel = diamond_check(n, borel=True)
    rnd = SuiteReport("diamond-random")
    rng = random.Random(cfg.seed)
    rnd.notes["seed"] = cfg.seed
    from . import _kernel
    rw = _kernel.rewriter(n)
    for k in range(cfg.samples):
        length = rng.randint(1, cfg.max_degree)
        word = tuple(rng.randrange(n * n) for _ in range(length))
        with stopwatch() as t:
            a = reduce_word(word, n, "random", random.Random(rng.random()))
            b = rw.normal_form(word)
            ok = a == b
        rnd.add(f"word{k} {render_word(word, n)}", ok, str(sorted(a.items())), str(sorted(b.items())),
                "strategy-dependent normal form", t[0])
    return [full, borel, rnd]


def suite_laplace(cfg):
    alg = _alg(cfg)
    rep = laplace_suite(alg) if cfg.n > 1 else SuiteReport("laplace")
    return [rep]


def suite_antipode(cfg):
    alg = _alg(cfg)
    return [antipode_axiom_check(alg), borel_antipode_check(alg)]


def suite_quasidet(cfg):
    alg = _alg(cfg)
    if cfg.n < 2:
        return [SuiteReport("quasidet")]
    out = []
    if cfg.quasidet_convention in ("antipode", "both"):
        out.append(quasidet_suite(alg, "antipode"))
    if cfg.quasidet_convention in ("printed", "both"):
        r = quasidet_suite(alg, "printed")
        r.suite = "quasidet-printed"
        out.append(r)
    return out


def suite_ore(cfg):
    """Left and right Ore witnesses for (generator, flag minor) pairs."""
    alg = _alg(cfg)
    n = cfg.n
    rep = SuiteReport("ore")
    rep.notes["bound"] = cfg.ore_bound
    for sigma in cfg.permutations():
        S = flag_ore_set(alg, sigma, cfg.ore_bound)
        for g in range(n * n):
            x = alg.gen(*alg.label(g))
            for k in range(len(S.gens)):
                for side in ("left", "right"):
                    name = f"S_{sigma.name()} {side} r={x} s={S.labels[k]}"
                    with stopwatch() as t:
                        try:
                            rp, sp = ore_solve(x, (k,), S, bound=cfg.ore_bound, side=side)
                        except OreNotFound as exc:
                            rep.add(name, INCONCLUSIVE, "", "", str(exc), t[0])
                            continue
                        ok = verify_witness(x, (k,), rp, sp, S, side)
                        if ok and side == "left" and len(sp) <= 2:
                            # cross-check against the graded linear solve
                            lin = ore_solve_linear(x, (k,), sp, S)
                            ok = lin == rp
                    lhs = f"{rp}*{S.labels[k]}" if side == "left" else f"{S.labels[k]}*({rp})"
                    rhs = f"{S.word_text(sp)}*{x}" if side == "left" else f"{x}*{S.word_text(sp)}"
                    rep.add(name, ok, lhs, rhs, "witness fails re-verification", t[0])
    return [rep]


def _charts(cfg):
    alg = _alg(cfg)
    return [gauss_decompose(alg, s, bound=cfg.ore_bound) for s in cfg.permutations()]


def suite_thm9(cfg):
    alg = _alg(cfg)
    comp = SuiteReport("thm9-compat")
    ver = SuiteReport("thm9")
    for ch in _charts(cfg):
        r = compat_check(ch.S)
        for c in r.cases:
            c.name = f"{ch.name()} {c.name}"
        comp.extend(r)
        ver.extend(gauss_verify(ch))
    if cfg.n == 3:
        ch = gauss_decompose(alg, Permutation.identity(3), partition={1}, bound=cfg.ore_bound)
        ver.extend(gauss_verify(ch))
    return [comp, ver]


def suite_thm10(cfg):
    rep = SuiteReport("thm10")
    for ch in _charts(cfg):
        rep.extend(gamma_hom_check(ch))
    return [rep]


def suite_thm11(cfg):
    a = SuiteReport("thm11i")
    b = SuiteReport("thm11ii")
    for ch in _charts(cfg):
        a.extend(u_coinvariance_check(ch))
        b.extend(u_stability_check(ch, cfg.stability_bound))
    b.notes["bound"] = cfg.stability_bound
    return [a, b]


def suite_prop1(cfg):
    alg = _alg(cfg)
    M = Comodule.fundamental(alg)
    rep = SuiteReport("prop1")
    for ch in _charts(cfg):
        rep.extend(prop1_check(ch, M, default_prop1_samples(ch)))
    return [rep]


def suite_cocycle(cfg):
    alg = _alg(cfg)
    charts = _charts(cfg)
    fund = cocycle_check(charts, Comodule.fundamental(alg))
    triv = cocycle_check(charts, Comodule.trivial(alg))
    triv.suite = "cocycle-trivial"
    return [fund, triv]


def suite_compat(cfg):
    alg = _alg(cfg)
    n = cfg.n
    out = [qcentrality_check(alg)]
    rep = SuiteReport("compat")
    for ch in _charts(cfg):
        r = compat_check(ch.S)
        for c in r.cases:
            c.name = f"{ch.name()} {c.name}"
        rep.extend(r)
    out.append(rep)
    cop = SuiteReport("minor-coproduct")
    for m in range(1, n + 1):
        for K in subsets(n, m):
            for L in subsets(n, m):
                with stopwatch() as t:
                    ok = minor_coproduct_check(alg, K, L)
                cop.add(f"Delta D[{K}|{L}]", ok, "", "", "", t[0])
    out.append(cop)
    # coaction of polynomials agrees with (id (x) pi) Delta
    rng = random.Random(cfg.seed)
    S = flag_ore_set(alg, Permutation.identity(n), cfg.ore_bound)
    compat_check(S)
    poly = SuiteReport("compat-polynomial")
    poly.notes["seed"] = cfg.seed
    for k in range(cfg.samples):
        deg = rng.randint(0, 3)
        word = tuple(rng.randrange(n * n) for _ in range(deg))
        p = alg.monomial(word)
        with stopwatch() as t:
            co = coact_fraction(OreFraction(S, (), p))
            rho = rho_borel(p)
            ctx = borel_context(alg)
            acc = {}
            for (l, r), c in rho.terms.items():
                s, e, low = ctx.split(r)
                key = (e, low)
                acc.setdefault(key, {})
                v = c * alg.field.qpow(s)
                acc[key][l] = acc[key].get(l, alg.field.zero) + v
            ok = {k2: NcPoly(alg, v) for k2, v in acc.items() if NcPoly(alg, v)} == co.terms
        poly.add(f"poly{k} {render_word(word, n)}", ok, "", "", "coaction differs", t[0])
    out.append(poly)
    return out


def suite_nested(cfg):
    alg = _alg(cfg)
    n = cfg.n
    out = []
    D = qdet(alg)
    Sd = OreSet(alg, [D], name="S_D", labels=["D"])
    compat_check(Sd)
    for ch in _charts(cfg):
        T = ch.S
        compat_check(T)
        samples = [alg.one, OreFraction(Sd, (0,), D), OreFraction(Sd, (0,), alg.one),
                   OreFraction(Sd, (0,), alg.gen(1, n))]
        r = nested_check(Sd, T, samples)
        r.suite = "nested"
        for c in r.cases:
            c.name = f"S_D < {T.name} {c.name}"
        out.append(r)
        small = OreSet(alg, [T.gens[0]], name=f"{T.name}[0]", labels=[T.labels[0]])
        compat_check(small)
        samples = [alg.one, OreFraction(small, (0,), alg.gen(ch.sigma(1), n)),
                   OreFraction(small, (0,), T.gens[0])]
        r = nested_check(small, T, samples)
        for c in r.cases:
            c.name = f"{small.name} < {T.name} {c.name}"
        out.append(r)
    merged = SuiteReport("nested")
    for r in out:
        merged.extend(r)
    return [merged]


_RUNNERS = {
    "diamond": suite_diamond, "laplace": suite_laplace, "antipode": suite_antipode,
    "quasidet": suite_quasidet, "ore": suite_ore, "thm9": suite_thm9, "thm10": suite_thm10,
    "thm11": suite_thm11, "prop1": suite_prop1, "cocycle": suite_cocycle, "compat": suite_compat,
    "nested": suite_nested,
}


def run_suite(cfg):
    """Run the configured suites in declared order; returns a list of reports."""
    for name in cfg.suites:
        if name not in _RUNNERS:
            raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    reports = []
    for name in cfg.suites:
        reports.extend(_RUNNERS[name](cfg))
    return reports
