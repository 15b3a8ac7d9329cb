import pytest

from manifoldstats import (CensusRecord, GammaEntry, Ledger, MoveDescriptor,
                           boundary_simplex, certify, cyclic_bundle,
                           find_neighborly_path, gamma_lower,
                           gamma_star_upper_direct, gamma_star_upper_via_path,
                           hamiltonian_cycle_in_link, integral_homology,
                           is_neighborly, stacked_sphere, validate)
from manifoldstats.errors import EndpointNotCertifiedError, PathInvalidError
from manifoldstats.gamma import (follow_path, hamiltonian_vertex, link_graph,
                                 pareto_minimal, path_bound)
from manifoldstats.homology import HomologyProfile

from .fixtures_utils import (goldner_harary_sphere, projective_space,
                             projective_sum, projective_sum_witness,
                             suspension)

RP3_KEY = "Z, Z_2, 0, Z"
SUM_KEY = "Z, Z_2 + Z_2, 0, Z"
FIRST_MOVE = MoveDescriptor(1, (2, 3, 4), (1, 6))


def is_cycle_of(cycle, graph):
    return (sorted(cycle) == sorted(graph.nodes) and
            all(graph.has_edge(cycle[i - 1], cycle[i])
                for i in range(len(cycle))))


def test_neighborly():
    assert is_neighborly(boundary_simplex())
    assert is_neighborly(cyclic_bundle(9))
    assert not is_neighborly(stacked_sphere(6))


def test_hamiltonian_links():
    K = cyclic_bundle(9)
    for v in K.vertices:
        cycle = hamiltonian_cycle_in_link(K, v)
        assert is_cycle_of(cycle, link_graph(K, v))
    assert hamiltonian_vertex(K)[0] == 1


def test_link_without_hamiltonian_cycle():
    K = suspension(goldner_harary_sphere())
    assert K.f_vector()[0] == 13
    assert hamiltonian_cycle_in_link(K, 12) is None
    assert hamiltonian_cycle_in_link(K, 13) is None
    assert is_cycle_of(hamiltonian_cycle_in_link(K, 1), link_graph(K, 1))


def test_direct_bound():
    assert gamma_star_upper_direct(boundary_simplex()) == 0
    assert gamma_star_upper_direct(cyclic_bundle(9)) == 10
    assert gamma_star_upper_direct(stacked_sphere(6)) is None


def test_path_bound():
    assert path_bound(5) == 1
    assert path_bound(6) == 1
    assert path_bound(9) == 7
    assert path_bound(15) == 46


def test_via_path():
    K = stacked_sphere(6)
    assert gamma_star_upper_via_path(K, [FIRST_MOVE]) == 1
    assert gamma_star_upper_via_path(boundary_simplex(), []) == 1
    assert gamma_star_upper_via_path(cyclic_bundle(9), []) == 10


def test_via_path_errors():
    K = stacked_sphere(6)
    with pytest.raises(PathInvalidError) as excinfo:
        gamma_star_upper_via_path(K, [FIRST_MOVE, FIRST_MOVE])
    assert excinfo.value.step == 1
    with pytest.raises(PathInvalidError) as excinfo:
        follow_path(K, [MoveDescriptor(0, (1, 2, 3, 4), (7,))])
    assert excinfo.value.step == 0
    with pytest.raises(EndpointNotCertifiedError):
        gamma_star_upper_via_path(K, [])


def test_find_neighborly_path():
    K = stacked_sphere(6)
    path = find_neighborly_path(K, seed=0)
    assert len(path) == 1
    assert path[0].kind == 1
    assert gamma_star_upper_via_path(K, path) == 1
    assert find_neighborly_path(boundary_simplex()) == []
    assert find_neighborly_path(stacked_sphere(12), max_steps=0) is None


def test_gamma_lower():
    assert gamma_lower(boundary_simplex()) == 0
    assert gamma_lower(cyclic_bundle(9)) == 10
    assert gamma_lower(projective_space()) == 10
    assert gamma_lower(projective_space(), p=3) == 0
    assert gamma_lower(integral_homology(cyclic_bundle(9))) == 10
    assert gamma_lower(HomologyProfile((1, 0, 0, 1),
                                       ((), (2, 2), (), ()))) == 20
    assert gamma_lower(3) == 30


def test_certify():
    certificate = certify(cyclic_bundle(9))
    assert certificate.neighborly
    assert certificate.g2 == 10
    assert certificate.hamiltonian_vertex == 1
    assert certificate.gamma_lower == 10
    assert certificate.gamma_star_upper == 10
    certificate = certify(stacked_sphere(6))
    assert not certificate.neighborly
    assert certificate.cycle is None
    assert certificate.gamma_star_upper is None


def test_pareto_minimal():
    assert pareto_minimal([(13, 34), (10, 36), (13, 40)]) == \
        ((10, 36), (13, 34))
    assert pareto_minimal([(6, 17), (6, 17), (7, 17)]) == ((6, 17),)


def test_entry_bounds():
    with pytest.raises(ValueError):
        GammaEntry(RP3_KEY, gamma_lower=20, gamma_upper=17)
    first = GammaEntry(SUM_KEY, "RP^3#RP^3", 20, 34, None, ("a",),
                       ((13, 34),))
    second = GammaEntry(SUM_KEY, "RP^3#RP^3", 20, 36, 60, ("b",),
                        ((10, 36),))
    merged = first.merge(second)
    assert merged.gamma_upper == 34
    assert merged.gamma_star_upper == 60
    assert merged.witnesses == ("a", "b")
    assert merged.g_vectors == ((10, 36), (13, 34))


def test_journal_line():
    entry = GammaEntry(RP3_KEY, "RP^3", 10, 17, None, ("abc",), ((6, 17),))
    line = "key=Z, Z_2, 0, Z;name=RP^3;glo=10;gup=17;gsup=;witness=abc;g=6,17"
    assert entry.journal_lines() == [line]
    assert GammaEntry.parse(line) == entry
    with pytest.raises(ValueError):
        GammaEntry.parse("key=x;glo=ten")


def test_ledger(tmp_path):
    path = str(tmp_path / "gamma.journal")
    ledger = Ledger(path)
    ledger.upsert(GammaEntry(RP3_KEY, "RP^3", 10, 17, None, ("abc",),
                             ((6, 17),)))
    ledger.upsert(GammaEntry(SUM_KEY, "RP^3#RP^3", 20, 34, None, ("d1",),
                             ((13, 34),)))
    stored = ledger.upsert(GammaEntry(SUM_KEY, "RP^3#RP^3", 20, 36, None,
                                      ("d2",), ((10, 36),)))
    assert stored.gamma_upper == 34
    assert stored.g_vectors == ((10, 36), (13, 34))
    assert len(ledger) == 2

    replayed = Ledger(path)
    assert replayed.entries() == ledger.entries()
    assert replayed.query(RP3_KEY).gamma_upper == 17
    assert replayed.query(name="RP^3#RP^3").witnesses == ("d1", "d2")
    profile = HomologyProfile((1, 0, 0, 1), ((), (2,), (), ()))
    assert replayed.query(profile).name == "RP^3"
    assert replayed.query("Z, Z_5, 0, Z") is None
    assert Ledger().query(RP3_KEY) is None


def test_ledger_skips_comments(tmp_path):
    path = tmp_path / "gamma.journal"
    path.write_text("# best known bounds\n\n"
                    "key=Z, 0, 0, Z;name=S^3;glo=0;gup=0;gsup=0;"
                    "witness=w;g=0,0\n", encoding="utf-8")
    entry = Ledger(str(path)).query("Z, 0, 0, Z")
    assert entry.gamma_star_upper == 0
    assert entry.g_vectors == ((0, 0),)


@pytest.mark.slow
def test_ledger_keeps_both_projective_sum_witnesses(tmp_path):
    glued = CensusRecord.from_complex(projective_sum(), "connected sum")
    assert glued.f_vector == (18, 96, 156, 78)
    assert glued.g_vector == (1, 13, 34)
    annealed = projective_sum_witness()
    assert annealed.homology.format() == SUM_KEY
    assert validate(annealed.complex()).is_manifold
    assert annealed.f_vector == (15, 86, 142, 71)
    assert annealed.g_vector == (1, 10, 36)

    path = str(tmp_path / "gamma.journal")
    ledger = Ledger(path)
    ledger.upsert(GammaEntry.from_record(glued, "RP^3#RP^3"))
    stored = ledger.upsert(GammaEntry.from_record(annealed, "RP^3#RP^3"))
    assert stored.g_vectors == ((10, 36), (13, 34))
    assert stored.gamma_upper == 34
    assert stored.witnesses == (glued.digest, annealed.digest)
    assert Ledger(path).query(SUM_KEY, "RP^3#RP^3") == stored
