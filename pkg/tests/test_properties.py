import itertools
import random

from src.analysis import restrict_view
from src.algebra.base import compose
from src.diagram import (
    Diagram,
    PathRef,
    all_paths,
    build_diagram,
    check_commutes,
    diagram_leq,
    parallel_paths,
    path_label,
)
from src.ifo import check_ifo, complete_ifo, strict_cycle_check
from src.lattice import meet_all


def test_random_diagrams_commute(random_diagrams) -> None:
    for d in random_diagrams(200, seed=1):
        assert check_commutes(d).ok


def test_completion_is_extensive_idempotent_and_ifo(random_diagrams) -> None:
    for d in random_diagrams(1000, seed=2):
        completed = complete_ifo(d)
        assert diagram_leq(d, completed)
        assert check_ifo(completed).ok
        assert complete_ifo(completed) == completed
        assert (completed == d) == check_ifo(d).ok


def test_completion_is_monotone(random_diagrams) -> None:
    rng = random.Random(5)
    for d in random_diagrams(300, seed=3):
        raised = d.with_tags(
            {
                edge.key: edge.tag | d.universe.tag(name for name in d.universe.names if rng.random() < 0.3)
                for edge in d.edges
            }
        )
        assert diagram_leq(d, raised)
        assert diagram_leq(complete_ifo(d), complete_ifo(raised))


def _ifo_assignments_above(d: Diagram):
    keys = [edge.key for edge in d.edges]
    routes = {key: [path.keys for path in parallel_paths(d, d.edge(*key))] for key in keys}
    choices = [[tag for tag in d.universe.all_tags() if d.edge(*key).tag <= tag] for key in keys]
    for combo in itertools.product(*choices):
        tags = dict(zip(keys, combo))
        if all(
            meet_all(d.universe, (tags[k] for k in route)) <= tags[key]
            for key in keys
            for route in routes[key]
        ):
            yield tags


def test_completion_is_the_least_ifo_diagram_above(random_diagrams) -> None:
    for d in random_diagrams(150, seed=4, max_nodes=5, max_edges=6, participants=("A", "B", "E")):
        completed = complete_ifo(d).tag_map()
        candidates = list(_ifo_assignments_above(d))
        assert completed in candidates
        for tags in candidates:
            assert all(completed[key] <= tags[key] for key in tags)


def test_views_of_ifo_diagrams_are_ifo(random_diagrams) -> None:
    for d in random_diagrams(1000, seed=6):
        completed = complete_ifo(d)
        for who in completed.universe.all_tags():
            if who.is_bottom:
                continue
            assert check_ifo(restrict_view(completed, who)).ok


def test_ifo_diagrams_have_no_strict_cycles(random_diagrams) -> None:
    for d in random_diagrams(1000, seed=8):
        assert strict_cycle_check(complete_ifo(d))


def test_larger_audiences_see_smaller_views(random_diagrams) -> None:
    for d in random_diagrams(200, seed=9):
        completed = complete_ifo(d)
        views = {
            who: restrict_view(completed, who) for who in completed.universe.all_tags() if not who.is_bottom
        }
        for small, large in itertools.product(views, repeat=2):
            if small <= large:
                assert diagram_leq(views[large], views[small])


def test_path_labels_compose_along_concatenation(random_diagrams) -> None:
    for d in random_diagrams(200, seed=10):
        for src, dst in itertools.permutations([node.id for node in d.nodes], 2):
            for path in all_paths(d, src, dst):
                arrow, tag = path_label(d, path)
                for cut in range(1, len(path.edges)):
                    left_arrow, left_tag = path_label(d, PathRef(path.edges[:cut]))
                    right_arrow, right_tag = path_label(d, PathRef(path.edges[cut:]))
                    assert d.theory.arrows_equal(compose(d.theory, left_arrow, right_arrow), arrow)
                    assert left_tag & right_tag == tag


def _raise_tags(d: Diagram, rng: random.Random) -> Diagram:
    return d.with_tags(
        {
            edge.key: edge.tag | d.universe.tag(name for name in d.universe.names if rng.random() < 0.3)
            for edge in d.edges
        }
    )


def _drop_edges(d: Diagram, rng: random.Random) -> Diagram:
    kept = [edge for edge in d.edges if rng.random() < 0.7]
    return build_diagram(d.universe, d.theory, d.nodes, kept)


def test_diagram_order_is_transitive_and_antisymmetric(random_diagrams) -> None:
    rng = random.Random(11)
    for d in random_diagrams(300, seed=12):
        smaller = _drop_edges(d, rng)
        raised = _raise_tags(d, rng)
        higher = _raise_tags(raised, rng)
        assert diagram_leq(d, d)
        assert diagram_leq(smaller, d) and diagram_leq(d, raised) and diagram_leq(raised, higher)
        assert diagram_leq(smaller, higher)
        for lower, upper in [(smaller, d), (d, raised), (raised, higher), (smaller, higher)]:
            if diagram_leq(upper, lower):
                assert lower == upper
            else:
                assert lower != upper
