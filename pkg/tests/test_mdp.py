import itertools
import random
from fractions import Fraction

import pytest

from ptamc.errors import FormulaClassError
from ptamc.dsl import parse_formula
from ptamc.generators import random_mdp, suite_size
from ptamc.linalg import solve_sparse
from ptamc.mdp import (check_pctl, qual_almost_until, qual_exists_almost_until, qual_exists_until,
                       qual_forall_pos_until, qual_until_step1, reach_prob, threshold_until,
                       until_goal)


def _policy_value(mdp, policy, target):
    """Probabilidad exacta de alcanzar target con una política sin memoria fija."""
    chosen = {s: mdp.choices[s][k] for s, k in enumerate(policy)}
    reaching = set(target)
    changed = True
    while changed:
        changed = False
        for s, dist in chosen.items():
            if s not in reaching and any(t in reaching for t in dist.support()):
                reaching.add(s)
                changed = True
    unknown = [s for s in reaching if s not in target]
    rows, rhs = {}, {}
    for s in unknown:
        row = {s: Fraction(1)}
        constant = Fraction(0)
        for t, p in chosen[s].entries:
            if t in target:
                constant += p
            elif t in reaching:
                row[t] = row.get(t, Fraction(0)) - p
        rows[s], rhs[s] = row, constant
    values = solve_sparse(rows, rhs) if rows else {}
    return [Fraction(1) if s in target else values.get(s, Fraction(0)) for s in range(len(mdp))]


def _enumerate(mdp, target):
    per_state = [range(len(c)) for c in mdp.choices]
    results = [_policy_value(mdp, policy, target) for policy in itertools.product(*per_state)]
    best = [max(r[s] for r in results) for s in range(len(mdp))]
    worst = [min(r[s] for r in results) for s in range(len(mdp))]
    return best, worst


def test_solve_sparse():
    rows = {"x": {"x": Fraction(2), "y": Fraction(1)}, "y": {"x": Fraction(1), "y": Fraction(3)}}
    assert solve_sparse(rows, {"x": Fraction(5), "y": Fraction(10)}) == {"x": 1, "y": 3}
    with pytest.raises(ValueError):
        solve_sparse({"x": {"x": 1, "y": 1}, "y": {"x": 2, "y": 2}}, {"x": 1, "y": 2})


def test_reach_prob_exact_values(reintento_mdp):
    meta = reintento_mdp.labelled("meta")
    s0 = reintento_mdp.index("s0")
    assert reach_prob(reintento_mdp, meta, "max")[s0] == Fraction(2, 3)
    assert reach_prob(reintento_mdp, meta, "min")[s0] == Fraction(1, 2)
    with pytest.raises(ValueError):
        reach_prob(reintento_mdp, meta, "avg")


def test_qualitative_sets(reintento_mdp):
    everything = reintento_mdp.all_states()
    meta = reintento_mdp.labelled("meta")
    s0, fallo = reintento_mdp.index("s0"), reintento_mdp.index("fallo")
    assert qual_exists_until(reintento_mdp, everything, meta) == {s0, reintento_mdp.index("meta")}
    assert qual_forall_pos_until(reintento_mdp, everything, meta) == everything - {fallo}
    assert qual_almost_until(reintento_mdp, everything, meta) == meta
    assert qual_exists_almost_until(reintento_mdp, everything, meta) == meta


def test_threshold_until(reintento_mdp):
    everything = reintento_mdp.all_states()
    meta = reintento_mdp.labelled("meta")
    s0 = reintento_mdp.index("s0")
    assert s0 in threshold_until(reintento_mdp, ">=", Fraction(1, 2), everything, meta)
    assert s0 not in threshold_until(reintento_mdp, ">", Fraction(1, 2), everything, meta)
    assert s0 in threshold_until(reintento_mdp, "<=", Fraction(2, 3), everything, meta)
    assert s0 not in threshold_until(reintento_mdp, "<", Fraction(2, 3), everything, meta)
    assert threshold_until(reintento_mdp, ">=", 0, frozenset(), frozenset()) == everything


def test_check_pctl(reintento_mdp):
    s0 = reintento_mdp.index("s0")
    assert s0 in check_pctl(reintento_mdp, parse_formula('P{>=1/2}[ F "meta" ]'))
    assert s0 not in check_pctl(reintento_mdp, parse_formula('P{>=1}[ F "meta" ]'))
    assert s0 in check_pctl(reintento_mdp, parse_formula('P{<1}[ G !"meta" ]'))
    with pytest.raises(FormulaClassError):
        check_pctl(reintento_mdp, parse_formula('P{>0}[ F[<=2] "meta" ]'))


def test_until_goal_interior_witnesses():
    S1, S2 = frozenset({0, 1}), frozenset({1, 2, 3})
    assert until_goal(S1, S2, None) == S2
    assert until_goal(S1, S2, frozenset({2})) == {1, 2}


def test_step1_variants(reintento_mdp):
    everything = reintento_mdp.all_states()
    meta = reintento_mdp.labelled("meta")
    s0 = reintento_mdp.index("s0")
    assert s0 in qual_until_step1(reintento_mdp, everything, meta, "forall_pos")
    assert s0 in qual_until_step1(reintento_mdp, everything, meta, "all_pos_lt1")
    assert s0 in qual_until_step1(reintento_mdp, everything, meta, "exists_lt1")
    assert qual_until_step1(reintento_mdp, frozenset(), meta, "exists_pos") == frozenset()
    with pytest.raises(ValueError):
        qual_until_step1(reintento_mdp, everything, meta, "otro")


def test_reach_prob_matches_policy_enumeration():
    rng = random.Random(7)
    for _ in range(suite_size(40, 400)):
        mdp = random_mdp(rng, max_states=5)
        target = frozenset(s for s in range(len(mdp)) if rng.random() < 0.3)
        best, worst = _enumerate(mdp, target)
        assert reach_prob(mdp, target, "max") == best
        assert reach_prob(mdp, target, "min") == worst
