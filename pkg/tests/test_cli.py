"""CLI surface: subcommands wired end to end through the console entry."""

import json
import subprocess
import sys

import pytest

from shapegpt.cli import main


def run_cli(*argv):
    return main(list(argv))


class TestToolsCommand:
    def test_list(self, capsys):
        assert run_cli("tools", "list") == 0
        out = capsys.readouterr().out
        assert "27 tools" in out
        assert "read_shapefile" in out

    def test_export_roundtrips(self, tmp_path, capsys):
        assert run_cli("tools", "export", "--format", "json", "--out", str(tmp_path / "t.json")) == 0
        doc = json.loads((tmp_path / "t.json").read_text())
        assert len(doc["tools"]) == 27
        assert run_cli("tools", "export", "--format", "yaml", "--out", str(tmp_path / "t.yaml")) == 0
        from shapegpt.tools import default_registry, load_registry

        assert load_registry(tmp_path) == default_registry()


class TestFixtureAndRun:
    def test_fixture_then_scripted_run(self, tmp_path, capsys):
        zip_path = tmp_path / "case1.zip"
        assert run_cli("fixtures", "case1", "--out", str(zip_path)) == 0
        assert zip_path.exists()
        code = run_cli(
            "run", str(zip_path), "allocate the facilities",
            "--scripted-case1", "--out", str(tmp_path / "work"),
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "success=True" in out
        assert "output/allocated.shp" in out


class TestEntryPoint:
    def test_console_script_help(self):
        proc = subprocess.run(
            [sys.executable, "-m", "shapegpt.cli", "--help"], capture_output=True, text=True
        )
        assert proc.returncode == 0
        for cmd in ("run", "bench", "tools", "serve", "make-suite", "fixtures"):
            assert cmd in proc.stdout

    def test_installed_script(self):
        proc = subprocess.run(["shapegpt", "--help"], capture_output=True, text=True)
        if proc.returncode != 0:
            pytest.skip("console script not on PATH in this environment")
        assert "shapefile analysis agent toolkit" in proc.stdout
