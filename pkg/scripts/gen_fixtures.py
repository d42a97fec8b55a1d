#!/usr/bin/env python3
"""
Script for generating test fixtures for cyquiver.

Writes every named quiver and Ext table of scripts/fixture_quivers.py to
tests/fixtures/<name>.json, and the double quivers built from them to
tests/fixtures/<name>_double.json.

Example usage:
    # Write missing fixtures
    python scripts/gen_fixtures.py

    # Force rewrite existing fixtures
    python scripts/gen_fixtures.py --force-rewrite
"""

import argparse
import logging
import sys
from pathlib import Path

# Add project root to path for imports
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))
sys.path.insert(0, str(project_root / "src"))

from cyquiver import QuiverError, double_quiver, quiver_from_ext_table
from cyquiver.formats import dump_json, quiver_document
from cyquiver.quiver import ext_table_from_dict, quiver_from_dict
from scripts.fixture_quivers import EXT_TABLES, QUIVERS

logging.basicConfig(level=logging.INFO)

FIXTURES_DIR = project_root / "tests" / "fixtures"


def write(path, text, force_rewrite):
    if path.exists() and not force_rewrite:
        logging.info(f"Skipping {path.name}: already exists")
        return False
    path.write_text(text)
    logging.info(f"Wrote {path.name}")
    return True


def main():
    parser = argparse.ArgumentParser(description="Generate quiver fixtures for tests")
    parser.add_argument("--force-rewrite", action="store_true", help="Overwrite existing fixture files")
    args = parser.parse_args()

    FIXTURES_DIR.mkdir(parents=True, exist_ok=True)
    written = 0
    for name, data in QUIVERS.items():
        written += write(FIXTURES_DIR / f"{name}.json", dump_json(data), args.force_rewrite)
        try:
            qbar = double_quiver(quiver_from_dict(data))
        except QuiverError as e:
            logging.warning(f"{name}: no double quiver ({e})")
            continue
        written += write(FIXTURES_DIR / f"{name}_double.json", quiver_document(qbar), args.force_rewrite)
    for name, data in EXT_TABLES.items():
        written += write(FIXTURES_DIR / f"{name}.json", dump_json(data), args.force_rewrite)
        qbar = double_quiver(quiver_from_ext_table(ext_table_from_dict(data)))
        written += write(FIXTURES_DIR / f"{name}_double.json", quiver_document(qbar), args.force_rewrite)
    logging.info(f"Done: {written} fixture file(s) written to {FIXTURES_DIR}")


if __name__ == "__main__":
    main()
