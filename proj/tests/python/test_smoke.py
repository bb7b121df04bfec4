import pytest

import quadorder as q


def test_version():
    assert isinstance(q.__version__, str) and q.__version__


def test_factorize_roundtrip():
    f = q.factorize(13122)
    assert f.factors == [(2, 1), (3, 8)]
    assert f.value() == 13122


def test_factorize_capacity():
    with pytest.raises(OverflowError):
        q.factorize(2**64)


def test_is_prime():
    assert q.is_prime(2**64 - 59)
    assert not q.is_prime(561)


def test_l_function_plain():
    assert q.l_function(2, 73) == 1
    assert q.l_function(12, 5) == 24


def test_l_function_prefactored_bigint():
    # The pre-factored overload carries indices far beyond machine range.
    nf = q.PrimeFactorization([(2, 70)])
    assert q.l_function(nf, 3) == 2**70
    assert q.l_function(nf, 17) == 2**69


def test_fundamental_unit():
    u = q.fundamental_unit(q.make_field(3))
    assert (u.x, u.y) == (2, 1)
    assert q.norm(u) == 1


def test_minimal_unit_power():
    r = q.minimal_unit_power(49, 73)
    assert (r.m, r.l_value, r.locally_associated) == (8, 56, False)


def test_classify_verdicts():
    c = q.classify(13122, 3)
    assert c.verdict
    assert [t.rule for t in c.trace] == [
        q.RuleTag.Case1,
        q.RuleTag.Case4,
        q.RuleTag.CoprimeCombiner,
    ]
    assert not q.classify(1868059634, 73).verdict


def test_classify_direct_oracle():
    c = q.classify(13122, 3)
    assert [(d.subindex, d.m, d.l_value) for d in c.direct] == [(3, 3, 3)]


def test_classify_json():
    assert '"verdict":true' in q.classify(13122, 3).to_json()


def test_pell():
    s = q.pell_min_solution(7)
    assert (s.x, s.y) == (8, 3)
    assert q.conjecture_check(7)
    assert q.theorem41_check(7)


def test_domain_errors_are_value_errors():
    with pytest.raises(ValueError):
        q.make_field(12)
    with pytest.raises(ValueError):
        q.l_function(0, 5)
    with pytest.raises(ValueError):
        q.pell_min_solution(2)


def test_table_rows():
    # d = 7: the unit 8 + 3*sqrt(7) already lies in R_3 (3 | 3), so m = 1
    # falls short of L = 2; at n = 4 the power gap is 2 against 4.
    rows = q.generate_table([7], 4)
    assert [(r.n, r.locally_associated, r.m, r.l_value) for r in rows] == [
        (1, True, 1, 1),
        (2, True, 2, 2),
        (3, False, 1, 2),
        (4, False, 2, 4),
    ]


def test_undetermined_stats():
    s = q.undetermined_stats(1, 13)
    assert (s.occurrences, s.locally_associated) == (2, 2)
