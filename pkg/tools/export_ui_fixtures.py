#!/usr/bin/env python3
"""Capture live API payloads into frontend/tests/fixtures/.

The frontend test suite runs against these snapshots, so UI logic is
exercised with exactly what the service emits for the demo corpora.
"""

from __future__ import annotations

import os
import sys

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(REPO, "src"))

from fastapi.testclient import TestClient

from iegraph.service import create_app, load_service_config

FIXTURE_DIR = os.path.join(REPO, "frontend", "tests", "fixtures")

CAPTURES = {
    "corpora.json": "/api/corpora",
    "entities_demo.json": "/api/corpora/demo/entities",
    "entity_dapps.json": "/api/corpora/demo/entities/dApps",
    "entity_optimistic_rollups.json": "/api/corpora/demo/entities/optimistic%20rollups",
    "coverage_demo.json": "/api/corpora/demo/coverage",
}


def main() -> None:
    config = load_service_config(os.path.join(REPO, "data", "service-config.json"))
    client = TestClient(create_app(config))
    os.makedirs(FIXTURE_DIR, exist_ok=True)
    for name, path in CAPTURES.items():
        response = client.get(path)
        response.raise_for_status()
        target = os.path.join(FIXTURE_DIR, name)
        with open(target, "wb") as fh:
            fh.write(response.content)
            fh.write(b"\n")
        print(f"wrote {target} ({len(response.content)} bytes)")


if __name__ == "__main__":
    main()
