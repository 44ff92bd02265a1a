import pytest

from linkrep.conditions import Decoration, check_sw, run_all_checks
from linkrep.diagram import ArcBand, CircleRef, SingularLinkDiagram
from linkrep.rotation import (
    RotationElement,
    conjugate,
    icosahedral_group,
    octahedral_group,
    rot,
    tetrahedral_group,
)
from linkrep.search import (
    REF1_HOPF_ORDER,
    ConjugacyClassKey,
    SearchOptions,
    StructuralConditionError,
    canonical_class,
    count_classes,
    enumerate_valid_decorations,
    ref1_decoration,
    ref1_diagram,
    verify_onepoint_geometry,
)


def arc(aid, start, s_slot, end, e_slot, word=()):
    return ArcBand(
        id=aid,
        start=CircleRef.parse(start),
        start_slot=s_slot,
        end=CircleRef.parse(end),
        end_slot=e_slot,
        word=tuple((CircleRef.parse(r), s) for r, s in word),
    )


OCT = SearchOptions(group=octahedral_group())


@pytest.fixture(scope="module")
def ref1_solutions():
    return enumerate_valid_decorations(ref1_diagram(), OCT)


class TestEnumerate:
    def test_single_circle_admits_every_element(self):
        d = SingularLinkDiagram(circles=("c",))
        sols = enumerate_valid_decorations(d, OCT)
        assert len(sols) == 24

    def test_hopf_without_connecting_arcs_is_empty(self):
        # the self-intersection condition fails, no path product exists
        d = SingularLinkDiagram(hopfs=("h",))
        assert enumerate_valid_decorations(d, OCT) == []

    def test_genus_failure_is_an_error(self):
        d = SingularLinkDiagram(
            circles=("c",),
            arcs=(arc("a", "c", 0, "c", 2), arc("b", "c", 1, "c", 3)),
        )
        with pytest.raises(StructuralConditionError):
            enumerate_valid_decorations(d, OCT)

    def test_single_hopf_with_commuting_partner(self):
        d = SingularLinkDiagram(
            circles=("c",),
            hopfs=("h",),
            arcs=(arc("a", "h.a", 0, "h.b", 0, [("c", 1)]),),
        )
        sols = enumerate_valid_decorations(d, OCT)
        # the arc relator makes c commute with h; the path product c must
        # escape {I, h}.  Centralizer sizes 8 and 4 give 3*6 + 6*2 = 30.
        assert len(sols) == 30
        for dec in sols[::5]:
            assert run_all_checks(d, dec).passed
            assert dec["c"] * dec["h"] == dec["h"] * dec["c"]
            assert dec["c"] != dec["h"]
            assert dec["c"] != RotationElement.identity()

    def test_ref1_solutions(self, ref1_solutions):
        sols = ref1_solutions
        assert len(sols) == 120
        assert ref1_decoration() in sols

    def test_ref1_solutions_all_verify(self, ref1_solutions):
        d = ref1_diagram()
        for dec in ref1_solutions[::7]:
            assert run_all_checks(d, dec).passed

    def test_ref1_solution_set_closed_under_group_conjugation(self, ref1_solutions):
        sols = ref1_solutions
        pool = {tuple(dec.mapping) for dec in sols}
        for dec in sols[::11]:
            for c in octahedral_group().elements[::5]:
                assert tuple(dec.conjugated(c).mapping) in pool

    def test_deterministic_order(self, ref1_solutions):
        assert enumerate_valid_decorations(ref1_diagram(), OCT) == ref1_solutions

    def test_tetrahedral_group_finds_nothing_on_ref1(self):
        # the tetrahedral involutions are the three coordinate flips, which
        # pairwise commute and cannot realize the forced pi/4 geometry
        sols = enumerate_valid_decorations(
            ref1_diagram(), SearchOptions(group=tetrahedral_group())
        )
        assert sols == []

    def test_any_hopf_elements_option(self):
        # lifting the involution restriction cannot lose solutions
        d = SingularLinkDiagram(
            circles=("c",),
            hopfs=("h",),
            arcs=(
                arc("a", "h.a", 0, "h.b", 0, [("c", 1)]),
                arc("b", "h.a", 1, "c", 0),
            ),
        )
        restricted = enumerate_valid_decorations(d, OCT)
        wide = enumerate_valid_decorations(
            d, SearchOptions(group=octahedral_group(), involutions_only_on_hopfs=False)
        )
        assert set(tuple(s.mapping) for s in restricted) <= set(
            tuple(s.mapping) for s in wide
        )
        # the Stiefel-Whitney check still rejects non-involutions on Hopf nodes
        assert set(tuple(s.mapping) for s in restricted) == set(
            tuple(s.mapping) for s in wide
        )


class TestCanonicalClass:
    def test_rotated_pairs_share_a_key(self):
        # (12),(34) and (14),(23) are perpendicular axis pairs
        assert canonical_class([rot("(12)"), rot("(34)")]) == canonical_class(
            [rot("(14)"), rot("(23)")]
        )

    def test_angle_distinguishes(self):
        # a repeated axis is not congruent to a perpendicular pair
        assert canonical_class([rot("(12)"), rot("(12)")]) != canonical_class(
            [rot("(12)"), rot("(34)")]
        )

    def test_conjugation_invariance(self):
        base = [rot("(12)"), rot("(14)"), rot("(34)"), rot("(23)")]
        key = canonical_class(base)
        for c in octahedral_group().elements[::3]:
            assert canonical_class([conjugate(c, g) for g in base]) == key

    def test_order_matters(self):
        a = [rot("(12)"), rot("(12)(34)"), rot("(13)")]
        b = [a[1], a[0], a[2]]
        assert canonical_class(a) != canonical_class(b)

    def test_rejects_non_involutions(self):
        with pytest.raises(ValueError):
            canonical_class([rot("(123)")])

    def test_key_is_hashable_record(self):
        key = canonical_class([rot("(12)")])
        assert isinstance(key, ConjugacyClassKey)
        assert key.size == 1
        assert hash(key) == hash(canonical_class([rot("(12)")]))

    def test_mirror_pairs_with_equal_cosines_distinguished_by_triples(self):
        tl, tr, bl, br = (rot(s) for s in ("(12)", "(14)", "(34)", "(23)"))
        base = canonical_class([tl, tr, bl, br])
        swapped = canonical_class([tl, br, bl, tr])
        assert base.cos_squared == swapped.cos_squared


class TestCountClasses:
    def test_duplicates_collapse(self):
        dec = ref1_decoration()
        conj = dec.conjugated(rot("(123)"))
        n = count_classes([dec, conj, dec], REF1_HOPF_ORDER, OCT)
        assert n == 1

    def test_none_mode_counts_distinct_mappings(self):
        dec = ref1_decoration()
        conj = dec.conjugated(rot("(123)"))
        opts = SearchOptions(group=octahedral_group(), dedup="none")
        assert count_classes([dec, conj, dec], REF1_HOPF_ORDER, opts) == 2

    def test_ref1_has_one_canonical_class(self, ref1_solutions):
        assert count_classes(ref1_solutions, REF1_HOPF_ORDER, OCT) == 1

    def test_group_conjugacy_refines_canonical(self, ref1_solutions):
        sols = ref1_solutions
        gc = count_classes(
            sols,
            REF1_HOPF_ORDER,
            SearchOptions(group=octahedral_group(), dedup="group_conjugacy"),
        )
        so3 = count_classes(sols, REF1_HOPF_ORDER, OCT)
        assert gc >= so3
        assert gc == 5  # measured: octahedral conjugation is coarser than SO(3)

    def test_invalid_dedup_mode(self):
        with pytest.raises(ValueError):
            SearchOptions(group=octahedral_group(), dedup="fuzzy")


class TestOnePointGeometry:
    def test_reference_decoration_passes(self):
        assert verify_onepoint_geometry(ref1_decoration())

    def test_all_ref1_solutions_pass(self, ref1_solutions):
        for dec in ref1_solutions:
            assert verify_onepoint_geometry(dec)

    def test_parallel_pair_fails(self):
        dec = Decoration.of(
            {
                "TL": rot("(12)"),
                "BL": rot("(12)"),
                "TR": rot("(14)"),
                "BR": rot("(23)"),
                "Y": rot("(24)"),
            }
        )
        assert not verify_onepoint_geometry(dec)

    def test_perpendicular_but_misaligned_fails(self):
        # both pairs perpendicular, but the common perpendiculars coincide with
        # coordinate axes at pi/2 (not pi/4) to the other pair
        dec = Decoration.of(
            {
                "TL": rot("(12)"),
                "BL": rot("(34)"),
                "TR": rot("(12)"),
                "BR": rot("(34)"),
                "Y": rot("(24)"),
            }
        )
        assert not verify_onepoint_geometry(dec)

    def test_non_involution_rejected(self):
        dec = Decoration.of(
            {
                "TL": rot("(123)"),
                "BL": rot("(34)"),
                "TR": rot("(12)"),
                "BR": rot("(34)"),
                "Y": rot("(24)"),
            }
        )
        with pytest.raises(ValueError):
            verify_onepoint_geometry(dec)


class TestIcosahedral:
    def test_involution_count(self):
        assert len(icosahedral_group().involutions()) == 15
