"""Tests for the model and method dispatch."""

import pytest

from octquad import pipelines
from octquad.pipelines import METHODS, MODELS, generate, quadrant_sigma, validate
from octquad.seqcore import reference


class TestValidate:
    """Test suite for validate."""

    def test_default_methods(self) -> None:
        """Test that rec is the default where defined, otherwise ct."""
        assert validate("t3", None) == "rec"
        assert validate("a108304", None) == "ct"
        assert validate("quad2", None) == "rec"

    def test_unknown_model(self) -> None:
        """Test that an unknown model is rejected."""
        with pytest.raises(ValueError, match="unknown model 'quad4'"):
            validate("quad4", None)

    def test_method_not_defined(self) -> None:
        """Test that walk is not available for the quadrant models."""
        with pytest.raises(ValueError, match="'walk' is not defined for quad1"):
            validate("quad1", "walk")

    def test_every_method_has_a_builder(self) -> None:
        """Test that the method table and the builders agree."""
        pairs = {(model, method) for model in METHODS for method in METHODS[model]}
        assert pairs == set(pipelines._BUILDERS)


class TestGenerate:
    """Test suite for generate."""

    @pytest.mark.parametrize("method", METHODS["t3"])
    def test_t3(self, method: str) -> None:
        """Test every T3 pipeline against the reference row."""
        assert generate("t3", 9, method) == reference("A059710")

    @pytest.mark.parametrize("method", METHODS["e3"])
    def test_e3(self, method: str) -> None:
        """Test every E3 pipeline against the reference row."""
        assert generate("e3", 9, method) == reference("A108307")

    @pytest.mark.parametrize("method", METHODS["a108304"])
    def test_a108304(self, method: str) -> None:
        """Test every A108304 pipeline against the reference row."""
        assert generate("a108304", 9, method) == reference("A108304")

    @pytest.mark.parametrize("k", range(4))
    @pytest.mark.parametrize("method", ["ct", "rec"])
    def test_quadrant(self, k: int, method: str) -> None:
        """Test the quadrant pipelines against the corrected rows."""
        tag = MODELS[f"quad{k}"]
        assert generate(f"quad{k}", 5, method) == reference(tag, corrected=True)

    @pytest.mark.parametrize("k", range(4))
    def test_quadrant_rec_matches_ct(self, k: int) -> None:
        """Test the quadrant recurrences against constant terms for 40 terms."""
        assert generate(f"quad{k}", 39, "rec") == generate(f"quad{k}", 39, "ct")

    def test_single_term(self) -> None:
        """Test n = 0 with the closed form."""
        assert generate("t3", 0, "closed").terms == (1,)

    def test_default_method(self) -> None:
        """Test that omitting the method uses the default."""
        assert generate("e3", 12) == generate("e3", 12, "rec")

    def test_negative_n(self) -> None:
        """Test that n must be nonnegative."""
        with pytest.raises(ValueError, match="nonnegative"):
            generate("t3", -1)

    def test_tagged_with_oeis_id(self) -> None:
        """Test the tag of generated sequences."""
        assert generate("quad0", 3, "ct").tag == "A151366"

    def test_generating_function(self) -> None:
        """Test the series wrapper."""
        series = pipelines.generating_function("t3", 5, "rec")
        assert series.to_integers() == [1, 0, 1, 1, 4]


class TestQuadrantSigma:
    """Test suite for quadrant_sigma."""

    def test_resolved_map(self) -> None:
        """Test that each parameter generates one quadrant row."""
        assert quadrant_sigma() == {
            0: "A216947",
            1: "A001181",
            2: "A236408",
            3: "A151366",
        }
