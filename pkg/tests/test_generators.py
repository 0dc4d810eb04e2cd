import pytest

from brauerloop import (
    apply_braid,
    apply_monoid,
    check_relations,
    enumerate_diagrams,
    permutation_label,
)

from conftest import diagram


class TestMonoid:
    def test_joins_neighbours_and_their_partners(self):
        assert apply_monoid(2, diagram(4, (1, 2), (3, 4))) == diagram(4, (2, 3), (1, 4))

    def test_identity_when_already_joined(self):
        d = diagram(4, (1, 2), (3, 4))
        assert apply_monoid(1, d) is d

    def test_defect_moves_to_displaced_partner(self):
        before = diagram(5, (1, 2), (4, 5))  # defect at 3
        after = diagram(5, (2, 3), (4, 5))  # defect at 1
        assert apply_monoid(2, before) == after

    def test_wraps_around_the_circle(self):
        assert apply_monoid(4, diagram(4, (1, 2), (3, 4))) == diagram(4, (4, 1), (2, 3))

    def test_index_out_of_range(self):
        d = diagram(4, (1, 2), (3, 4))
        for bad in (0, 5, -1):
            with pytest.raises(IndexError):
                apply_monoid(bad, d)


class TestBraid:
    def test_swaps_partners(self):
        assert apply_braid(2, diagram(4, (1, 2), (3, 4))) == diagram(4, (1, 3), (2, 4))

    def test_identity_when_already_joined(self):
        d = diagram(4, (1, 2), (3, 4))
        assert apply_braid(1, d) is d

    def test_defect_swap(self):
        before = diagram(5, (1, 5), (3, 4))  # defect at 2
        after = diagram(5, (2, 5), (3, 4))  # defect at 1
        assert apply_braid(1, before) == after

    def test_involution_everywhere(self):
        for length in (4, 5, 6, 7):
            for d in enumerate_diagrams(length):
                for i in range(1, length + 1):
                    assert apply_braid(i, apply_braid(i, d)) == d

    def test_index_out_of_range(self):
        d = diagram(4, (1, 2), (3, 4))
        for bad in (0, 5):
            with pytest.raises(IndexError):
                apply_braid(bad, d)


@pytest.mark.parametrize("length", range(3, 9))
def test_generators_preserve_diagram_invariants(length):
    # ChordDiagram.__post_init__ revalidates, so constructing the image suffices;
    # additionally the defect count must be conserved.
    for d in enumerate_diagrams(length):
        for i in range(1, length + 1):
            for image in (apply_monoid(i, d), apply_braid(i, d)):
                assert image.length == length
                assert (image.defect is None) == (length % 2 == 0)


@pytest.mark.parametrize("length", range(3, 9))
def test_relations_exhaustive(length):
    report = check_relations(length, exhaustive=True)
    assert report.all_passed, report.to_text()


def test_relation_report_text_runs():
    text = check_relations(5).to_text()
    assert "exhaustive" in text
    assert "pass" in text


def test_relations_sampled_mode():
    report = check_relations(9, exhaustive=False, sample=25, seed=1)
    assert report.all_passed
    assert not report.exhaustive


def test_relations_reject_tiny_length():
    with pytest.raises(ValueError):
        check_relations(2)


@pytest.mark.parametrize("length", (4, 6, 8))
def test_braid_keeps_labels_away_from_block_boundaries(length):
    half = length // 2
    for d in enumerate_diagrams(length):
        if permutation_label(d) is None:
            continue
        for i in range(1, length + 1):
            if i in (half, length):
                continue
            assert permutation_label(apply_braid(i, d)) is not None
