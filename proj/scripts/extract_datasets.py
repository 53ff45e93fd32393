#!/usr/bin/env python3
"""Rebuild data/{wine,haberman,zoo}.csv from copies shipped inside pip packages.

Wine comes from scikit-learn, Haberman from the keel-ds wheel and Zoo from the
Orange3 wheel. Output: one row per point, class label (1-based integer) last.
"""
import argparse
import glob
import os
import subprocess
import sys
import zipfile

ZOO_CLASSES = ["mammal", "bird", "reptile", "fish", "amphibian", "insect", "invertebrate"]


def wheel(package, wheel_dir):
    prefix = package.replace("-", "_").lower() + "-"

    def find():
        return sorted(f for f in glob.glob(os.path.join(wheel_dir, "*.whl"))
                      if os.path.basename(f).lower().startswith(prefix))

    if not find():
        subprocess.run([sys.executable, "-m", "pip", "download", "--no-deps", "--only-binary", ":all:",
                        package, "-d", wheel_dir], check=True)
    return zipfile.ZipFile(find()[-1])


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default=os.path.join(os.path.dirname(__file__), "..", "data"))
    ap.add_argument("--wheel-dir", default="/tmp/aimk-wheels")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    os.makedirs(args.wheel_dir, exist_ok=True)

    from sklearn.datasets import load_wine
    w = load_wine()
    with open(os.path.join(args.out, "wine.csv"), "w") as f:
        for x, y in zip(w.data, w.target):
            f.write(",".join("%g" % v for v in x) + ",%d\n" % (y + 1))

    raw = wheel("keel-ds", args.wheel_dir).read("keel_ds/data/imbalanced/raw/haberman.dat").decode()
    with open(os.path.join(args.out, "haberman.csv"), "w") as f:
        for line in raw.strip().splitlines():
            a = [s.strip() for s in line.split(",")]
            f.write(",".join(a[:3]) + "," + ("2" if a[3] == "positive" else "1") + "\n")

    tab = wheel("Orange3", args.wheel_dir).read("Orange/datasets/zoo.tab").decode().splitlines()
    with open(os.path.join(args.out, "zoo.csv"), "w") as f:
        for line in tab[3:]:
            a = line.split("\t")
            if len(a) < 18:
                continue
            f.write(",".join(a[1:17]) + ",%d\n" % (ZOO_CLASSES.index(a[17]) + 1))


if __name__ == "__main__":
    main()
