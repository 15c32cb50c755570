"""Tests for sequences, binomial transforms and b-files."""

import logging

import pytest

from octquad.seqcore import (
    REFERENCE_ERRATA,
    Sequence,
    binomial_transform,
    compare_prefix,
    known_tags,
    read_bfile,
    reference,
    to_bfile,
)

A216947_CORRECTED = (1, 3, 11, 47, 225, 1173)


class TestSequence:
    """Test suite for Sequence."""

    def test_terms_are_exact_integers(self) -> None:
        """Test that terms are stored as a tuple of ints."""
        s = Sequence.of("x", [1, 2, 3])
        assert s.terms == (1, 2, 3)
        assert len(s) == 3
        assert s[1] == 2
        assert list(s) == [1, 2, 3]

    def test_rejects_float_terms(self) -> None:
        """Test that non-integer terms are rejected."""
        with pytest.raises(ValueError, match="non-integer"):
            Sequence("x", (1, 2.5))  # type: ignore[arg-type]

    def test_with_tag(self) -> None:
        """Test retagging keeps the terms."""
        s = Sequence.of("x", [4, 5]).with_tag("y")
        assert s.tag == "y"
        assert s.terms == (4, 5)


class TestReference:
    """Test suite for the reference rows."""

    def test_known_tags(self) -> None:
        """Test that all seven rows are present."""
        assert known_tags() == [
            "A001181",
            "A059710",
            "A108304",
            "A108307",
            "A151366",
            "A216947",
            "A236408",
        ]

    def test_unknown_tag(self) -> None:
        """Test that an unknown tag names the known ones."""
        with pytest.raises(ValueError, match="unknown tag 'A000000'; known tags: A001181"):
            reference("A000000")

    def test_printed_row_kept(self) -> None:
        """Test that the printed A216947 row is returned unchanged."""
        assert reference("A216947").terms == (1, 3, 11, 49, 221, 1113)

    def test_corrected_row(self) -> None:
        """Test that errata are applied on request."""
        assert reference("A216947", corrected=True).terms == A216947_CORRECTED
        assert set(REFERENCE_ERRATA) == {"A216947"}

    def test_correction_logged(self, caplog: pytest.LogCaptureFixture) -> None:
        """Test that each corrected term is logged as a warning."""
        with caplog.at_level(logging.WARNING, logger="octquad.seqcore"):
            reference("A216947", corrected=True)
        assert "A216947: correcting term 3: 49 -> 47" in caplog.text
        assert len(caplog.records) == 3

    def test_correction_leaves_other_rows(self) -> None:
        """Test that rows without errata are identical either way."""
        assert reference("A059710", corrected=True) == reference("A059710")


class TestBinomialTransform:
    """Test suite for binomial_transform."""

    def test_octant_rows(self) -> None:
        """Test that the octant rows are successive binomial transforms."""
        t3 = reference("A059710")
        assert binomial_transform(t3, 1).terms == reference("A108307").terms
        assert binomial_transform(t3, 2).terms == reference("A108304").terms

    def test_inverse(self) -> None:
        """Test that negative powers invert positive ones."""
        e3 = reference("A108307")
        assert binomial_transform(e3, -1).terms == reference("A059710").terms
        assert binomial_transform(binomial_transform(e3, 3), -3).terms == e3.terms

    def test_quadrant_chain(self) -> None:
        """Test that the quadrant rows form a binomial-transform chain."""
        rows = [
            reference("A151366"),
            reference("A236408"),
            reference("A001181"),
            reference("A216947", corrected=True),
        ]
        for lower, upper in zip(rows, rows[1:]):
            assert binomial_transform(lower).terms == upper.terms

    def test_identity(self) -> None:
        """Test that k=0 returns the sequence itself."""
        s = Sequence.of("x", [3, 1, 4])
        assert binomial_transform(s, 0) is s

    def test_tag(self) -> None:
        """Test the derived tag."""
        assert binomial_transform(Sequence.of("x", [1]), 2).tag == "bt^2(x)"

    def test_empty(self) -> None:
        """Test that an empty sequence is rejected."""
        with pytest.raises(ValueError, match="empty sequence"):
            binomial_transform(Sequence("x"))


class TestComparePrefix:
    """Test suite for compare_prefix."""

    def test_common_prefix(self) -> None:
        """Test the length of the common prefix."""
        a = Sequence.of("a", [1, 2, 3, 4])
        assert compare_prefix(a, Sequence.of("b", [1, 2, 9])) == 2
        assert compare_prefix(a, a) == 4
        assert compare_prefix(a, Sequence("c")) == 0


class TestBfile:
    """Test suite for b-file I/O."""

    def test_render(self) -> None:
        """Test the b-file text."""
        assert to_bfile(Sequence.of("x", [1, 0, 1])) == "0 1\n1 0\n2 1\n"

    def test_parse(self) -> None:
        """Test parsing rendered text back."""
        text = to_bfile(reference("A108307"))
        assert read_bfile(text, "A108307") == reference("A108307")

    def test_big_integers(self) -> None:
        """Test values beyond 64 bits."""
        value = 3**200
        assert read_bfile(f"0 {value}\n").terms == (value,)

    def test_malformed_line(self) -> None:
        """Test that a malformed line names its line number."""
        with pytest.raises(ValueError, match="line 2"):
            read_bfile("0 1\n1 x\n")

    def test_wrong_field_count(self) -> None:
        """Test a line with three fields."""
        with pytest.raises(ValueError, match="line 1"):
            read_bfile("0 1 2\n")

    def test_index_gap(self) -> None:
        """Test that indices must be contiguous from 0."""
        with pytest.raises(ValueError, match="line 2: expected index 1, got 2"):
            read_bfile("0 1\n2 5\n")
