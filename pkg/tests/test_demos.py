import shutil
import subprocess
import sys
from pathlib import Path

import pytest

DEMOS = Path(__file__).resolve().parents[1] / "demos"


@pytest.mark.parametrize("script", sorted(DEMOS.glob("*.py")), ids=lambda p: p.name)
def test_demo_runs(script, tmp_path):
    r = subprocess.run([sys.executable, str(script), str(tmp_path)], capture_output=True, text=True, timeout=120)
    assert r.returncode == 0, r.stderr
    assert r.stdout.strip()


@pytest.mark.skipif(shutil.which("yinyang") is None, reason="console script not installed")
def test_cli_walkthrough(tmp_path):
    r = subprocess.run(["sh", str(DEMOS / "07_cli.sh"), str(tmp_path)], capture_output=True, text=True, timeout=120)
    assert r.returncode == 0, r.stderr
    assert "parsimonious=yes" in r.stdout and (tmp_path / "p.svg").exists()
