import hashlib
import importlib.resources

import pytest

from dejean.morphisms import (BUILTIN_SIZES, MorphismFormatError,
                              PrefixStabilityError, UniformMorphism, builtin,
                              emit_morphism_file, factor_closure,
                              iteration_bound, limit_prefix,
                              parse_morphism_file)

DATA_SHA256 = "de010d1cc7d2573fc027b7e01b763853368d6f11102e4c4ae1a4c2215f4b01e7"


def thue_morse_like():
    return UniformMorphism(3, "01", "10")


class TestEmbeddedTable:
    def test_data_file_checksum(self):
        raw = importlib.resources.files("dejean.data").joinpath("morphisms.txt").read_bytes()
        assert hashlib.sha256(raw).hexdigest() == DATA_SHA256

    def test_twelve_sizes(self):
        assert BUILTIN_SIZES == tuple(range(15, 27))
        for n in BUILTIN_SIZES:
            assert builtin(n).n == n

    @pytest.mark.parametrize("n", BUILTIN_SIZES)
    def test_structural_invariants(self, n):
        h = builtin(n)
        expected_r = 4 * n if n == 21 else 4 * n - 4
        assert h.r == expected_r
        assert len(h.image0) == len(h.image1) == expected_r
        assert h.image0[-1] != h.image1[-1]
        assert "011" in h.image0
        assert "110" in h.image1
        assert len(h.common_prefix) < h.r

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            builtin(14)
        with pytest.raises(ValueError):
            builtin(27)


class TestUniformMorphism:
    def test_validation(self):
        with pytest.raises(ValueError):
            UniformMorphism(3, "01", "0")
        with pytest.raises(ValueError):
            UniformMorphism(3, "0a", "01")
        with pytest.raises(ValueError):
            UniformMorphism(1, "01", "10")

    def test_common_prefix(self):
        assert UniformMorphism(3, "0010", "0011").common_prefix == "001"
        assert UniformMorphism(3, "01", "10").common_prefix == ""

    def test_apply(self):
        h = builtin(15)
        assert h.apply("") == ""
        assert h.apply("01") == h.image0 + h.image1
        assert len(h.apply("0110")) == 4 * h.r


class TestLimitPrefix:
    def test_thue_morse_prefix(self):
        # image of 0 starts with 0, so iterates from "0" begin with it
        h = thue_morse_like()
        got = limit_prefix(h, 8)
        assert got.startswith("0110")
        assert got.startswith(h.image0)

    def test_prefix_of_longer_prefix(self):
        for n in (15, 17, 21):
            h = builtin(n)
            short = limit_prefix(h, 200)
            long = limit_prefix(h, 400)
            assert long.startswith(short)

    @pytest.mark.parametrize("n", BUILTIN_SIZES)
    def test_builtin_limits_exist(self, n):
        h = builtin(n)
        got = limit_prefix(h, h.r)
        assert len(got) >= h.r

    def test_min_length_validation(self):
        with pytest.raises(ValueError):
            limit_prefix(thue_morse_like(), 0)

    def test_swap_morphism_raises(self):
        # the length-1 swap has no growing iterate from either letter
        h = UniformMorphism(3, "1", "0")
        with pytest.raises(PrefixStabilityError):
            limit_prefix(h, 4)

    def test_swapped_images_still_stabilize(self):
        # image of 0 starts with 1 and image of 1 with 0, so the doubled
        # iterate from "0" is the scheme that applies
        got = limit_prefix(UniformMorphism(3, "10", "01"), 8)
        assert got.startswith("0110")


class TestFactorClosure:
    @pytest.mark.parametrize("n", BUILTIN_SIZES)
    def test_length_2_universe(self, n):
        assert factor_closure(builtin(n), 2).members == {"01", "10", "11"}

    def test_length_1(self):
        assert factor_closure(builtin(15), 1).members == {"0", "1"}

    def test_length_r_members_occur_in_probe(self):
        for n in (15, 26):
            h = builtin(n)
            probe = h.apply("0110")
            closure = factor_closure(h, h.r)
            probe_factors = {probe[i:i + h.r] for i in range(len(probe) - h.r + 1)}
            assert closure.members == probe_factors

    def test_closure_members_occur_in_limit_prefix(self):
        h = builtin(15)
        text = limit_prefix(h, 12 * h.r)
        for k in (2, h.r):
            for member in factor_closure(h, k):
                # soundness spot check: members are genuine factors
                assert member in text

    def test_closure_is_closed(self):
        h = builtin(15)
        members = factor_closure(h, 2).members
        for u in members:
            image = h.apply(u)
            assert {image[i:i + 2] for i in range(len(image) - 1)} <= members

    def test_thue_morse_square_free_avoids_nothing_binary(self):
        assert factor_closure(thue_morse_like(), 2).members == {"00", "01", "10", "11"}


class TestIterationBound:
    def test_examples(self):
        assert iteration_bound(9 * 15**2 - 6 * 15 + 1, 56) == 2
        assert iteration_bound(1, 2) == 1
        assert iteration_bound(9 * 26**2 - 6 * 26 + 1, 100) == 2

    def test_validation(self):
        with pytest.raises(ValueError):
            iteration_bound(0, 2)
        with pytest.raises(ValueError):
            iteration_bound(5, 1)


class TestStanzaFormat:
    def test_round_trip_builtin(self):
        morphs = [builtin(n) for n in BUILTIN_SIZES]
        assert parse_morphism_file(emit_morphism_file(morphs)) == morphs

    def test_emit_sorts_by_n(self):
        morphs = [builtin(17), builtin(15)]
        parsed = parse_morphism_file(emit_morphism_file(morphs))
        assert [h.n for h in parsed] == [15, 17]

    def test_two_stanzas(self):
        text = "n=3\nr=2\nh0=01\nh1=10\n\nn=4\nr=2\nh0=00\nh1=01\n"
        parsed = parse_morphism_file(text)
        assert len(parsed) == 2 and parsed[1].n == 4

    def test_comments_and_blank_lines(self):
        text = "# header\n\nn=3\nr=2\n# mid\nh0=01\nh1=10\n\n"
        assert len(parse_morphism_file(text)) == 1

    def test_length_mismatch(self):
        with pytest.raises(MorphismFormatError, match="line 4"):
            parse_morphism_file("n=3\nr=3\nh0=010\nh1=10\n")

    def test_declared_r_mismatch(self):
        with pytest.raises(MorphismFormatError, match="does not match declared"):
            parse_morphism_file("n=3\nr=5\nh0=010\nh1=101\n")

    def test_non_binary_symbol(self):
        with pytest.raises(MorphismFormatError, match="non-binary"):
            parse_morphism_file("n=3\nr=2\nh0=0a\nh1=10\n")

    def test_missing_field(self):
        with pytest.raises(MorphismFormatError, match="missing"):
            parse_morphism_file("n=3\nr=2\nh0=01\n")

    def test_unknown_line(self):
        with pytest.raises(MorphismFormatError, match="line 1"):
            parse_morphism_file("bogus\n")

    def test_duplicate_field(self):
        with pytest.raises(MorphismFormatError, match="duplicate"):
            parse_morphism_file("n=3\nn=4\nr=2\nh0=01\nh1=10\n")
