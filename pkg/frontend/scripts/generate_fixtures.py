"""Regenerate the golden JSON fixtures from a real service instance.

Run from the repository root:  python frontend/scripts/generate_fixtures.py
Deterministic: fixed seeds end to end, so reruns produce identical files.
"""

import json
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from uaexplain.cli import main
from uaexplain.service import ServiceConfig, create_app

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def dump(name, payload):
    (FIXTURES / name).write_text(json.dumps(payload, indent=2) + "\n")
    print(f"wrote fixtures/{name}")


def run():
    FIXTURES.mkdir(exist_ok=True)
    with tempfile.TemporaryDirectory() as tmp:
        root = Path(tmp)
        assert main(["gen-data", "--n", "300", "--seed", "12", "--out-dir", str(root),
                     "--cases", "3", "--activities", "5"]) == 0
        assert main(["train", "--schema", str(root / "schema.json"),
                     "--csv", str(root / "synthetic.csv"),
                     "--out", str(root / "model.json"),
                     "--profiles-out", str(root / "profiles.json"),
                     "--epochs", "120", "--hidden", "24", "--dropout", "0.15",
                     "--seed", "12", "--t", "30"]) == 0
        cfg = ServiceConfig(checkpoint=str(root / "model.json"),
                            train_csv=str(root / "synthetic.csv"),
                            cases=str(root / "cases.json"),
                            profiles=str(root / "profiles.json"),
                            T=30, max_grid_points=25, importance_repeats=3, seed=12)
        client = TestClient(create_app(cfg))

        dump("cases.json", client.get("/api/cases").json())
        dump("case_detail.json", client.get("/api/cases/case-001").json())
        dump("uncertainty.json",
             client.get("/api/cases/case-001/activities/0/uncertainty").json())
        dump("ice_numeric.json",
             client.get("/api/explain/ice",
                        params={"case": "case-001", "activity": 0, "feature": "x1"}).json())
        dump("ice_categorical.json",
             client.get("/api/explain/ice",
                        params={"case": "case-001", "activity": 0, "feature": "crew"}).json())
        dump("pdp.json", client.get("/api/explain/pdp", params={"feature": "crew"}).json())
        dump("pdp_numeric.json",
             client.get("/api/explain/pdp", params={"feature": "x1"}).json())
        dump("importance.json", client.get("/api/model/importance").json())
        dump("whatif_empty.json",
             client.post("/api/whatif", json={"case_id": "case-001", "activity": 0,
                                              "overrides": {}}).json())
        dump("whatif_crew.json",
             client.post("/api/whatif", json={"case_id": "case-001", "activity": 0,
                                              "overrides": {"crew": "a"}}).json())


if __name__ == "__main__":
    run()
