"""Sampled checks of the operad, bimodule and infinitesimal bimodule laws."""

import logging
import random
from collections.abc import Callable

from operadwb.config import settings
from operadwb.exceptions import OperadError, TruncationExceeded
from operadwb.models.colours import Colour, ColourProfile
from operadwb.models.permutation import Permutation
from operadwb.schemas.report import LawReport
from operadwb.services.structures import Bimodule, IBimodule, Operad, SSequence

logger = logging.getLogger(__name__)


class _Sampler:
    def __init__(self, rng: random.Random, max_arity: int):
        self.rng = rng
        self.max_arity = max_arity
        self._profiles: dict[int, list[ColourProfile]] = {}

    def profiles(self, sequence: SSequence) -> list[ColourProfile]:
        if id(sequence) not in self._profiles:
            self._profiles[id(sequence)] = sequence.profiles(self.max_arity)
        return self._profiles[id(sequence)]

    def draw(self, sequence: SSequence, output: Colour | None = None, min_arity: int = 0, max_arity: int | None = None):
        bound = self.max_arity if max_arity is None else max_arity
        candidates = [
            p
            for p in self.profiles(sequence)
            if (output is None or p.output == output) and min_arity <= p.arity <= bound
        ]
        self.rng.shuffle(candidates)
        for profile in candidates[:6]:
            x = sequence.sample(profile, self.rng)
            if x is not None:
                return x
        return None


def _run(
    report: LawReport,
    laws: list[Callable[[_Sampler, LawReport], bool]],
    rng: random.Random,
    max_arity: int,
) -> LawReport:
    sampler = _Sampler(rng, max_arity)
    for _ in range(report.budget):
        law = rng.choice(laws)
        try:
            if law(sampler, report):
                report.checked += 1
            else:
                report.skip(f"{law.__name__}: no sample")
        except TruncationExceeded as exc:
            # sampled profiles leaving a truncation are not law failures
            report.skip(f"{law.__name__}: {exc.detail}")
        except OperadError as exc:
            report.record(law.__name__, "unknown", [exc.detail])
    logger.info(
        "%s laws on %s (seed %d): %d checks, %s",
        report.family,
        report.instance,
        report.seed,
        report.checked,
        report.summary(),
    )
    return report


def _defaults(budget, seed, max_arity) -> tuple[int, int, int]:
    return (
        settings.BUDGET if budget is None else budget,
        settings.SEED if seed is None else seed,
        settings.MAX_ARITY if max_arity is None else max_arity,
    )


def check_operad_axioms(
    operad: Operad, budget: int | None = None, seed: int | None = None, max_arity: int | None = None
) -> LawReport:
    budget, seed, max_arity = _defaults(budget, seed, max_arity)
    O = operad
    key = O.key

    def right_unit(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(O, min_arity=1)
        if x is None:
            return False
        i = s.rng.randint(1, O.arity(x))
        unit = O.unit(O.profile(x).inputs[i - 1])
        if not O.equal(O.compose(x, i, unit), x):
            report.record("right unit", O.profile(x), [key(x), str(i)])
        return True

    def left_unit(s: _Sampler, report: LawReport) -> bool:
        y = s.draw(O)
        if y is None:
            return False
        if not O.equal(O.compose(O.unit(O.profile(y).output), 1, y), y):
            report.record("left unit", O.profile(y), [key(y)])
        return True

    def sequential(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(O, min_arity=1)
        if x is None:
            return False
        i = s.rng.randint(1, O.arity(x))
        y = s.draw(O, output=O.profile(x).inputs[i - 1], min_arity=1)
        if y is None:
            return False
        j = s.rng.randint(1, O.arity(y))
        z = s.draw(O, output=O.profile(y).inputs[j - 1])
        if z is None:
            return False
        lhs = O.compose(O.compose(x, i, y), i + j - 1, z)
        rhs = O.compose(x, i, O.compose(y, j, z))
        if not O.equal(lhs, rhs):
            report.record("sequential associativity", O.profile(x), [key(x), key(y), key(z), str(i), str(j)])
        return True

    def parallel(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(O, min_arity=2)
        if x is None:
            return False
        i, k = sorted(s.rng.sample(range(1, O.arity(x) + 1), 2))
        inputs = O.profile(x).inputs
        y = s.draw(O, output=inputs[i - 1])
        z = s.draw(O, output=inputs[k - 1])
        if y is None or z is None:
            return False
        m = O.arity(y)
        lhs = O.compose(O.compose(x, i, y), k + m - 1, z)
        rhs = O.compose(O.compose(x, k, z), i, y)
        if not O.equal(lhs, rhs):
            report.record("parallel associativity", O.profile(x), [key(x), key(y), key(z), str(i), str(k)])
        return True

    def equivariance(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(O, min_arity=1)
        if x is None:
            return False
        n = O.arity(x)
        sigma = Permutation.random(n, s.rng)
        i = s.rng.randint(1, n)
        moved = O.act(x, sigma)
        y = s.draw(O, output=O.profile(moved).inputs[i - 1])
        if y is None:
            return False
        tau = Permutation.random(O.arity(y), s.rng)
        lhs = O.compose(moved, i, O.act(y, tau))
        rhs = O.act(O.compose(x, sigma(i), y), sigma.partial_compose(i, tau))
        if not O.equal(lhs, rhs):
            report.record("equivariance", O.profile(x), [key(x), key(y), str(sigma), str(tau), str(i)])
        return True

    report = LawReport(instance=O.name, family="operad", seed=seed, budget=budget)
    return _run(report, [right_unit, left_unit, sequential, parallel, equivariance], random.Random(seed), max_arity)


def check_bimodule_axioms(
    bimodule: Bimodule, budget: int | None = None, seed: int | None = None, max_arity: int | None = None
) -> LawReport:
    budget, seed, max_arity = _defaults(budget, seed, max_arity)
    M, P, Q = bimodule, bimodule.left, bimodule.right
    key = M.key

    def arguments(s: _Sampler, a) -> list | None:
        inputs = P.profile(a).inputs
        cap = max(1, s.max_arity // max(1, len(inputs)))
        xs = [s.draw(M, output=c, max_arity=cap) for c in inputs]
        return None if any(x is None for x in xs) else xs

    def right_unit(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(M, min_arity=1)
        if x is None:
            return False
        i = s.rng.randint(1, M.arity(x))
        if not M.equal(M.right_act(x, i, Q.unit(M.profile(x).inputs[i - 1])), x):
            report.record("right unit", M.profile(x), [key(x), str(i)])
        return True

    def left_unit(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(M)
        if x is None:
            return False
        if not M.equal(M.left_act(P.unit(M.profile(x).output), [x]), x):
            report.record("left unit", M.profile(x), [key(x)])
        return True

    def right_sequential(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(M, min_arity=1)
        if x is None:
            return False
        i = s.rng.randint(1, M.arity(x))
        b = s.draw(Q, output=M.profile(x).inputs[i - 1], min_arity=1)
        if b is None:
            return False
        j = s.rng.randint(1, Q.arity(b))
        c = s.draw(Q, output=Q.profile(b).inputs[j - 1])
        if c is None:
            return False
        lhs = M.right_act(M.right_act(x, i, b), i + j - 1, c)
        rhs = M.right_act(x, i, Q.compose(b, j, c))
        if not M.equal(lhs, rhs):
            report.record("right associativity", M.profile(x), [key(x), Q.key(b), Q.key(c), str(i), str(j)])
        return True

    def right_parallel(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(M, min_arity=2)
        if x is None:
            return False
        i, k = sorted(s.rng.sample(range(1, M.arity(x) + 1), 2))
        inputs = M.profile(x).inputs
        b = s.draw(Q, output=inputs[i - 1])
        c = s.draw(Q, output=inputs[k - 1])
        if b is None or c is None:
            return False
        lhs = M.right_act(M.right_act(x, i, b), k + Q.arity(b) - 1, c)
        rhs = M.right_act(M.right_act(x, k, c), i, b)
        if not M.equal(lhs, rhs):
            report.record("right parallel associativity", M.profile(x), [key(x), Q.key(b), Q.key(c)])
        return True

    def left_associativity(s: _Sampler, report: LawReport) -> bool:
        a = s.draw(P, min_arity=1, max_arity=2)
        if a is None:
            return False
        i = s.rng.randint(1, P.arity(a))
        a2 = s.draw(P, output=P.profile(a).inputs[i - 1], max_arity=2)
        if a2 is None:
            return False
        composite = P.compose(a, i, a2)
        xs = arguments(s, composite)
        if xs is None:
            return False
        m = P.arity(a2)
        inner = M.left_act(a2, xs[i - 1 : i - 1 + m])
        lhs = M.left_act(composite, xs)
        rhs = M.left_act(a, xs[: i - 1] + [inner] + xs[i - 1 + m :])
        if not M.equal(lhs, rhs):
            report.record("left associativity", P.profile(composite), [P.key(a), P.key(a2), *map(key, xs)])
        return True

    def compatibility(s: _Sampler, report: LawReport) -> bool:
        a = s.draw(P, min_arity=1, max_arity=2)
        if a is None:
            return False
        xs = arguments(s, a)
        if xs is None or sum(M.arity(x) for x in xs) == 0:
            return False
        total = M.left_act(a, xs)
        slot = s.rng.randint(1, M.arity(total))
        b = s.draw(Q, output=M.profile(total).inputs[slot - 1], max_arity=2)
        if b is None:
            return False
        block, offset = 0, slot
        while offset > M.arity(xs[block]):
            offset -= M.arity(xs[block])
            block += 1
        moved = list(xs)
        moved[block] = M.right_act(xs[block], offset, b)
        if not M.equal(M.right_act(total, slot, b), M.left_act(a, moved)):
            report.record("left-right compatibility", M.profile(total), [P.key(a), *map(key, xs), Q.key(b)])
        return True

    def right_equivariance(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(M, min_arity=1)
        if x is None:
            return False
        n = M.arity(x)
        sigma = Permutation.random(n, s.rng)
        i = s.rng.randint(1, n)
        moved = M.act(x, sigma)
        b = s.draw(Q, output=M.profile(moved).inputs[i - 1])
        if b is None:
            return False
        tau = Permutation.random(Q.arity(b), s.rng)
        lhs = M.right_act(moved, i, Q.act(b, tau))
        rhs = M.act(M.right_act(x, sigma(i), b), sigma.partial_compose(i, tau))
        if not M.equal(lhs, rhs):
            report.record("right equivariance", M.profile(x), [key(x), Q.key(b), str(sigma), str(tau)])
        return True

    def left_equivariance(s: _Sampler, report: LawReport) -> bool:
        a = s.draw(P, min_arity=1, max_arity=3)
        if a is None:
            return False
        n = P.arity(a)
        sigma = Permutation.random(n, s.rng)
        moved = P.act(a, sigma)
        xs = arguments(s, moved)
        if xs is None:
            return False
        inverse = sigma.inverse()
        reordered = [xs[inverse(j) - 1] for j in range(1, n + 1)]
        sizes = [M.arity(x) for x in xs]
        lhs = M.left_act(moved, xs)
        rhs = M.act(M.left_act(a, reordered), sigma.block(sizes))
        if not M.equal(lhs, rhs):
            report.record("left equivariance", P.profile(a), [P.key(a), str(sigma), *map(key, xs)])
        taus = [Permutation.random(size, s.rng) for size in sizes]
        lhs = M.left_act(moved, [M.act(x, t) for x, t in zip(xs, taus)])
        rhs = M.act(M.left_act(moved, xs), taus[0].direct_sum(*taus[1:]))
        if not M.equal(lhs, rhs):
            report.record("left equivariance", P.profile(a), [P.key(a), *map(str, taus), *map(key, xs)])
        return True

    def basepoints(s: _Sampler, report: LawReport) -> bool:
        colours = sorted(P.colours)
        s.rng.shuffle(colours)
        for colour in colours:
            a = P.sample(ColourProfile((), colour), s.rng)
            if a is not None:
                if not M.equal(M.left_act(a, []), M.gamma(a)):
                    report.record("basepoint", ColourProfile((), colour), [P.key(a)])
                return True
        return False

    laws = [
        right_unit,
        left_unit,
        right_sequential,
        right_parallel,
        left_associativity,
        compatibility,
        right_equivariance,
        left_equivariance,
    ]
    if any(P.admits(ColourProfile((), c)) for c in P.colours):
        laws.append(basepoints)
    report = LawReport(instance=M.name, family="bimodule", seed=seed, budget=budget)
    return _run(report, laws, random.Random(seed), max_arity)


def check_ibimodule_axioms(
    ibimodule: IBimodule, budget: int | None = None, seed: int | None = None, max_arity: int | None = None
) -> LawReport:
    budget, seed, max_arity = _defaults(budget, seed, max_arity)
    N, O = ibimodule, ibimodule.operad
    key = N.key

    def left_unit(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(N)
        if x is None:
            return False
        if not N.equal(N.left_inf(O.unit(N.profile(x).output), 1, x), x):
            report.record("left unit", N.profile(x), [key(x)])
        return True

    def right_unit(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(N, min_arity=1)
        if x is None:
            return False
        i = s.rng.randint(1, N.arity(x))
        if not N.equal(N.right_inf(x, i, O.unit(N.profile(x).inputs[i - 1])), x):
            report.record("right unit", N.profile(x), [key(x), str(i)])
        return True

    def left_sequential(s: _Sampler, report: LawReport) -> bool:
        a = s.draw(O, min_arity=1)
        if a is None:
            return False
        i = s.rng.randint(1, O.arity(a))
        a2 = s.draw(O, output=O.profile(a).inputs[i - 1], min_arity=1)
        if a2 is None:
            return False
        j = s.rng.randint(1, O.arity(a2))
        x = s.draw(N, output=O.profile(a2).inputs[j - 1])
        if x is None:
            return False
        lhs = N.left_inf(O.compose(a, i, a2), i + j - 1, x)
        rhs = N.left_inf(a, i, N.left_inf(a2, j, x))
        if not N.equal(lhs, rhs):
            report.record("left associativity", O.profile(a), [O.key(a), O.key(a2), key(x)])
        return True

    def right_sequential(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(N, min_arity=1)
        if x is None:
            return False
        i = s.rng.randint(1, N.arity(x))
        b = s.draw(O, output=N.profile(x).inputs[i - 1], min_arity=1)
        if b is None:
            return False
        j = s.rng.randint(1, O.arity(b))
        c = s.draw(O, output=O.profile(b).inputs[j - 1])
        if c is None:
            return False
        lhs = N.right_inf(N.right_inf(x, i, b), i + j - 1, c)
        rhs = N.right_inf(x, i, O.compose(b, j, c))
        if not N.equal(lhs, rhs):
            report.record("right associativity", N.profile(x), [key(x), O.key(b), O.key(c)])
        return True

    def right_parallel(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(N, min_arity=2)
        if x is None:
            return False
        i, k = sorted(s.rng.sample(range(1, N.arity(x) + 1), 2))
        inputs = N.profile(x).inputs
        b = s.draw(O, output=inputs[i - 1])
        c = s.draw(O, output=inputs[k - 1])
        if b is None or c is None:
            return False
        lhs = N.right_inf(N.right_inf(x, i, b), k + O.arity(b) - 1, c)
        rhs = N.right_inf(N.right_inf(x, k, c), i, b)
        if not N.equal(lhs, rhs):
            report.record("right parallel associativity", N.profile(x), [key(x), O.key(b), O.key(c)])
        return True

    def commutation(s: _Sampler, report: LawReport) -> bool:
        a = s.draw(O, min_arity=1)
        if a is None:
            return False
        i = s.rng.randint(1, O.arity(a))
        x = s.draw(N, output=O.profile(a).inputs[i - 1])
        if x is None:
            return False
        inner = N.left_inf(a, i, x)
        if N.arity(inner) == 0:
            return False
        k = s.rng.randint(1, N.arity(inner))
        b = s.draw(O, output=N.profile(inner).inputs[k - 1])
        if b is None:
            return False
        m, width = O.arity(b), N.arity(x)
        lhs = N.right_inf(inner, k, b)
        if k < i:
            rhs = N.left_inf(O.compose(a, k, b), i + m - 1, x)
        elif k < i + width:
            rhs = N.left_inf(a, i, N.right_inf(x, k - i + 1, b))
        else:
            rhs = N.left_inf(O.compose(a, k - width + 1, b), i, x)
        if not N.equal(lhs, rhs):
            report.record("left-right commutation", N.profile(inner), [O.key(a), key(x), O.key(b), str(i), str(k)])
        return True

    def right_equivariance(s: _Sampler, report: LawReport) -> bool:
        x = s.draw(N, min_arity=1)
        if x is None:
            return False
        n = N.arity(x)
        sigma = Permutation.random(n, s.rng)
        i = s.rng.randint(1, n)
        moved = N.act(x, sigma)
        b = s.draw(O, output=N.profile(moved).inputs[i - 1])
        if b is None:
            return False
        tau = Permutation.random(O.arity(b), s.rng)
        lhs = N.right_inf(moved, i, O.act(b, tau))
        rhs = N.act(N.right_inf(x, sigma(i), b), sigma.partial_compose(i, tau))
        if not N.equal(lhs, rhs):
            report.record("right equivariance", N.profile(x), [key(x), O.key(b), str(sigma), str(tau)])
        return True

    def left_equivariance(s: _Sampler, report: LawReport) -> bool:
        a = s.draw(O, min_arity=1)
        if a is None:
            return False
        n = O.arity(a)
        sigma = Permutation.random(n, s.rng)
        i = s.rng.randint(1, n)
        moved = O.act(a, sigma)
        x = s.draw(N, output=O.profile(moved).inputs[i - 1])
        if x is None:
            return False
        tau = Permutation.random(N.arity(x), s.rng)
        lhs = N.left_inf(moved, i, N.act(x, tau))
        rhs = N.act(N.left_inf(a, sigma(i), x), sigma.partial_compose(i, tau))
        if not N.equal(lhs, rhs):
            report.record("left equivariance", O.profile(a), [O.key(a), key(x), str(sigma), str(tau)])
        return True

    laws = [
        left_unit,
        right_unit,
        left_sequential,
        right_sequential,
        right_parallel,
        commutation,
        right_equivariance,
        left_equivariance,
    ]
    report = LawReport(instance=N.name, family="ibimodule", seed=seed, budget=budget)
    return _run(report, laws, random.Random(seed), max_arity)
