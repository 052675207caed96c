#!/usr/bin/env python3
"""
Regenerate the golden files used by the command-line tests.

Run from the repository root after an intentional change of output:

    python scripts/regenerate_golden.py
"""

import logging
import sys
from pathlib import Path

from click.testing import CliRunner

# Add the project root directory to the Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from frenet4.cli.app import cli  # noqa: E402
from frenet4.utils.logging import configure_logging  # noqa: E402
from tests.golden_cases import GOLDEN_CASES, GOLDEN_DIR, REPORTING_CODES  # noqa: E402

logger = logging.getLogger(__name__)


def regenerate() -> bool:
    """Rewrite every golden file; returns False if a command failed."""
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    runner = CliRunner()
    ok = True
    for name, args in GOLDEN_CASES.items():
        target = GOLDEN_DIR / name
        result = runner.invoke(cli, args + ["--out", str(target)])
        if result.exit_code not in REPORTING_CODES:
            logger.error(f"{name}: exit code {result.exit_code}\n{result.output}")
            ok = False
            continue
        logger.info(f"Wrote {target}")
    return ok


if __name__ == "__main__":
    configure_logging("INFO")
    sys.exit(0 if regenerate() else 1)
