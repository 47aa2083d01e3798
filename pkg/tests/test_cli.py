"""Tests for the command line.

These tests define our goals for the CLI:
- Goal 1: analyze accepts files, stdin, inline JSON and curve shorthand
- Goal 2: Exit codes are 1 for input errors and 2 for resource caps
- Goal 3: --json prints a parseable camelCase report on stdout
- Goal 4: corpus and harness report results and exit nonzero on failure
"""

import json

from typer.testing import CliRunner

from levelness.cli import app

from .conftest import SAMPLE_MONOMIAL_IDEAL

runner = CliRunner()


class TestAnalyze:
    """Tests for the analyze command."""

    def test_input_file_json(self, tmp_path):
        """Goal: A JSON file produces a JSON report."""
        path = tmp_path / "ideal.json"
        path.write_text(json.dumps(SAMPLE_MONOMIAL_IDEAL))
        result = runner.invoke(app, ["analyze", "--input", str(path), "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["type"] == 2
        assert data["isLevel"] is False
        assert data["isNearlyGorenstein"] is True

    def test_stdin(self):
        """Goal: --input - reads from stdin."""
        result = runner.invoke(
            app, ["analyze", "--input", "-"], input=json.dumps(SAMPLE_MONOMIAL_IDEAL)
        )
        assert result.exit_code == 0
        assert "nearly gorenstein: true" in result.stdout

    def test_numerical_curve_shorthand(self):
        """Goal: --numerical-curve builds the curve semigroup."""
        result = runner.invoke(app, ["analyze", "--numerical-curve", "0,1,2,3", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["hVector"] == [1, 2]
        assert data["crossEngineAgreement"] is True

    def test_malformed_json_exits_one(self):
        """Goal: Broken input exits 1 with a message on stderr."""
        result = runner.invoke(app, ["analyze", "--inline", '{"type": "ideal"'])
        assert result.exit_code == 1

    def test_missing_file_exits_one(self, tmp_path):
        """Goal: Unreadable files are input errors."""
        result = runner.invoke(app, ["analyze", "--input", str(tmp_path / "nope.json")])
        assert result.exit_code == 1

    def test_two_sources_rejected(self):
        """Goal: Exactly one input source is allowed."""
        result = runner.invoke(
            app, ["analyze", "--numerical-curve", "0,1", "--inline", "{}"]
        )
        assert result.exit_code == 1

    def test_bad_option_exits_one(self):
        """Goal: Invalid option values are input errors."""
        result = runner.invoke(app, ["analyze", "--numerical-curve", "0,1,2", "--kmax", "0"])
        assert result.exit_code == 1

    def test_lex_order(self):
        """Goal: --order lex gives the same verdicts."""
        result = runner.invoke(
            app,
            ["analyze", "--inline", json.dumps(SAMPLE_MONOMIAL_IDEAL), "--order", "lex", "--json"],
        )
        assert result.exit_code == 0
        assert json.loads(result.stdout)["type"] == 2


class TestCorpusCommand:
    """Tests for the corpus command."""

    def test_filtered_run(self):
        """Goal: A filtered run passes and lists its items."""
        result = runner.invoke(app, ["corpus", "--filter", "hypersurface"])
        assert result.exit_code == 0
        assert "hypersurface-xz-y2" in result.stdout

    def test_unmatched_filter_exits_one(self):
        """Goal: A filter that selects nothing is an input error."""
        result = runner.invoke(app, ["corpus", "--filter", "no-such-item"])
        assert result.exit_code == 1

    def test_table_shows_reference(self):
        """Goal: Each row carries the statement the item checks."""
        result = runner.invoke(app, ["corpus", "--filter", "four-cycle"])
        assert result.exit_code == 0
        assert "one-spheres are Gorenstein" in result.stdout

    def test_json_summary(self):
        """Goal: --json prints a summary and per-item results."""
        result = runner.invoke(app, ["corpus", "--filter", "three-points", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["summary"]["total"] == 1
        assert data["results"][0]["status"] == "pass"


class TestHarnessCommand:
    """Tests for the harness command."""

    def test_small_seeded_run(self):
        """Goal: A short seeded run reports counts and no violations."""
        result = runner.invoke(app, ["harness", "--seed", "7", "--instances", "3", "--json"])
        assert result.exit_code == 0
        data = json.loads(result.stdout)
        assert data["instances"] == 3
        assert data["violations"] == []
