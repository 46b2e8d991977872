"""Reproduce the 27-qubit example: phase congruences, mod-4 refutation, graphs and LC verdict.

Writes the instance file and both graph exports under --out-dir.
"""

from __future__ import annotations

import argparse
import json
from dataclasses import dataclass
from pathlib import Path

from lulc.forge import builtin_paper_instance
from lulc.instance_file import InstanceFile
from lulc.pipeline import certify


@dataclass
class RegressionConfig:
    out_dir: str = "results/builtin"


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out-dir", default=RegressionConfig.out_dir)
    cfg = RegressionConfig(p.parse_args().out_dir)
    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    inst, witness = builtin_paper_instance()
    (out / "instance.json").write_text(InstanceFile.from_instance(inst, witness).dumps())
    cert = certify(inst, witness)
    for name, g in (("g_s", cert.pair.g_s), ("g_qs", cert.pair.g_qs)):
        (out / f"{name}.json").write_text(g.to_json() + "\n")
        (out / f"{name}.dot").write_text(g.to_dot(name.upper()))
    report = cert.to_dict()
    (out / "report.json").write_text(json.dumps(report, indent=2) + "\n")
    print(json.dumps({k: v for k, v in report.items() if k != "contradiction"}, indent=2))
    raise SystemExit(0 if cert.confirmed else 3)


if __name__ == "__main__":
    main()
