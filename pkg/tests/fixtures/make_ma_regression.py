"""Regenerate ma_regression.json: pass/fail of every Ma family over Q (seeded
samples) and GF(5) (every admissible parameter point).

    python tests/fixtures/make_ma_regression.py
"""

import json
from pathlib import Path

from rbwb.families import sample_parameters, survey_family, sweep_parameters
from rbwb.hopf import builtin_h4
from rbwb.rbops import check_algebra_rb
from rbwb.scalars import GF, QQ

MA = ("ma_a", "ma_b", "ma_c", "ma_d", "ma_e", "ma_f", "ma_g", "ma_h")
SEED = 7
SAMPLES = 20
OUT = Path(__file__).with_name("ma_regression.json")


def build() -> dict:
    out = {"seed": SEED, "samples_over_q": SAMPLES, "families": {}}
    for ctx, points in ((QQ, lambda f: sample_parameters(f, QQ, SAMPLES, SEED)),
                        (GF(5), lambda f: sweep_parameters(f, GF(5)))):
        alg = builtin_h4(ctx).alg
        for fid in MA:
            res = survey_family(fid, ctx, points(fid), lambda c: check_algebra_rb(alg, c))
            out["families"].setdefault(fid, {})[ctx.name] = res
    return out


if __name__ == "__main__":
    OUT.write_text(json.dumps(build(), indent=2, sort_keys=True) + "\n")
    print(f"wrote {OUT}")
