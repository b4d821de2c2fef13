"""Write the small seeded data files used by the README walkthrough.

Creates three single-column CSVs under data/:

  normal20.csv      20 draws from N(0,1), a well-specified example
  conflict20.csv    20 draws from N(10,1), for the prior-override demo
  lifetimes100.csv  100 synthetic positive lifetimes (gamma shaped), a
                    stand-in for the classic pressure-vessel stress data,
                    which is not redistributable and must be supplied by
                    the user as tests/data/kevlar.csv

Everything is seeded; rerunning rewrites identical bytes.
"""

import argparse
import pathlib

from dpcheck.distributions import Normal
from dpcheck.rng import RngStream

SEED = 1985


def write_column(path, values, header):
    lines = [header] + [f"{v:.17g}" for v in values]
    path.write_text("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(values)} rows)")


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out-dir", default="data", help="target directory")
    args = parser.parse_args(argv)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    write_column(
        out / "normal20.csv",
        Normal(0.0, 1.0).sample(20, RngStream(SEED, "normal20").generator()),
        "value",
    )
    write_column(
        out / "conflict20.csv",
        Normal(10.0, 1.0).sample(20, RngStream(SEED, "conflict20").generator()),
        "value",
    )
    # shape 2, scale 5000: unimodal, right skewed, hour-scale lifetimes
    rng = RngStream(SEED, "lifetimes100").generator()
    write_column(out / "lifetimes100.csv", rng.gamma(2.0, 5000.0, size=100), "hours")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
