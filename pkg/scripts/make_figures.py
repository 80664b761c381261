#!/usr/bin/env python3
"""Build the 2-D gallery instances, render them, and save certificates.

Four instances: a convex sector against a line pair in both orders (the
one-sided patterns), and a sector against a downward ray fan in both
orders (the symmetric pattern).  Each gets an instance file, an SVG, and
a certificate document when separation holds.
"""
import argparse
import json
import math
import os

from conesep.instances import certificate_to_doc, parse_instance, serialize_instance
from conesep.separation import separate_nonsym, separate_sym
from conesep.svg import render_svg


def _ray(deg: float) -> list[float]:
    return [math.cos(math.radians(deg)), math.sin(math.radians(deg))]


def _sector(center: float, half: float) -> dict:
    return {"pieces": [{"generators": [_ray(center - half), _ray(center + half)]}]}


def _fan(degrees: list[float]) -> dict:
    return {"kind": "union", "pieces": [{"generators": [_ray(d)]} for d in degrees]}


def _instances() -> dict[str, dict]:
    narrow = _sector(90.0, 10.0)
    line_pair = _fan([0.0, 180.0])
    wide = _sector(90.0, 25.0)
    down_fan = _fan([-60.0, -120.0])
    return {
        "one_sided_left": {"dim": 2, "cones": {"C": narrow, "K": line_pair}},
        "one_sided_right": {"dim": 2, "cones": {"C": line_pair, "K": narrow}},
        "symmetric_left": {"dim": 2, "cones": {"C": wide, "K": down_fan}},
        "symmetric_right": {"dim": 2, "cones": {"C": down_fan, "K": wide}},
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="figures")
    args = ap.parse_args()
    os.makedirs(args.out_dir, exist_ok=True)

    for name, doc in _instances().items():
        inst = parse_instance(json.dumps(doc))
        path = os.path.join(args.out_dir, name)
        with open(path + ".instance.json", "w", encoding="utf-8") as fh:
            fh.write(serialize_instance(inst))

        C, K = inst.region("C"), inst.region("K")
        if name.startswith("symmetric"):
            cert = separate_sym(C, K)
            verdict = "sym " + ("separated" if cert is not None else "absent")
        else:
            cert_ck = separate_nonsym(C, K)
            cert_kc = separate_nonsym(K, C)
            cert = cert_ck if cert_ck is not None else cert_kc
            verdict = (
                f"N(C,K) {'present' if cert_ck is not None else 'absent'}, "
                f"N(K,C) {'present' if cert_kc is not None else 'absent'}"
            )
        if cert is not None:
            with open(path + ".cert.json", "w", encoding="utf-8") as fh:
                json.dump(certificate_to_doc(cert), fh, indent=2, sort_keys=True)

        svg = render_svg(inst.regions, order=["C", "K"], certificate=cert)
        with open(path + ".svg", "w", encoding="utf-8") as fh:
            fh.write(svg)

        print(f"{name}: {verdict} -> {path}.svg")


if __name__ == "__main__":
    main()
