"""Regenerate the bundled weight-system samples under tests/data (fixed seed)."""

import random
from pathlib import Path

from bhkmld.bhk import certify
from bhkmld.dbscan import cy_weight_systems, enumerate_delsarte
from bhkmld.exactlin import determinant

SEED = 20240611
OUT = Path(__file__).resolve().parent.parent / "tests" / "data"


def admissible(ws, max_det=None):
    for p in enumerate_delsarte(ws):
        cert = certify(p)
        if cert.ok and (max_det is None or abs(determinant(cert.matrix)) <= max_det):
            return True
    return False


def line(ws):
    return " ".join(map(str, ws.a + (ws.d,)))


def main():
    rng = random.Random(SEED)
    pool3 = [ws for ws in cy_weight_systems(5, 120) if admissible(ws, 10**4)]
    n3 = sorted(rng.sample(pool3, 100), key=lambda w: (w.d, [-x for x in w.a]))
    (OUT / "n3_sample.txt").write_text(
        "# 100 CY weight systems in 5 variables with a certified Delsarte potential, |det A| <= 10^4\n"
        + "".join(line(ws) + "\n" for ws in n3))

    pool = [ws for k in (4, 5) for ws in cy_weight_systems(k, 80) if admissible(ws)]
    pool = [ws for ws in pool if ws.a not in ((11, 7, 3, 1), (95, 61, 26, 8, 1))]
    distractors = rng.sample(pool, 50)
    body = ["11 7 3 1 22", "95 61 26 8 1 191"] + [line(ws) for ws in distractors]
    rng.shuffle(body)
    (OUT / "scan_sample.txt").write_text(
        "# weights... degree; two known small-mld systems among 50 distractors\n"
        + "\n".join(body) + "\n")


if __name__ == "__main__":
    main()
