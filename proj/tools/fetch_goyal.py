#!/usr/bin/env python3
"""Fetch the Welch-Goyal predictor workbook and export the monthly and
quarterly sheets as CSVs usable by the `predict` and `memory` subcommands.

The workbook is distributed from Amit Goyal's data page
(https://sites.google.com/view/agoyal145); the 2018 vintage is the one the
shipped defaults assume. Download URLs move around, so pass the direct link
(or an already-downloaded .xlsx path) as the first argument.

Requires pandas with an xlsx engine (openpyxl).

Usage:
    python3 tools/fetch_goyal.py <url-or-xlsx-path> [outdir]

Produces <outdir>/goyal_monthly.csv and <outdir>/goyal_quarterly.csv with
columns: date, index, earnings, price. Example run:

    ltls predict --data data/goyal_monthly.csv \
        --earnings-col earnings --price-col price --out scan.csv
"""

import sys
import os
import urllib.request

import pandas as pd


def export(df: pd.DataFrame, date_col: str, out_path: str) -> None:
    cols = {c.lower().strip(): c for c in df.columns}
    if date_col not in cols or "index" not in cols or "e12" not in cols:
        raise SystemExit(f"sheet lacks {date_col}/Index/E12 columns; found {list(df.columns)}")
    out = pd.DataFrame()
    dates = df[cols[date_col]].astype("Int64")
    if date_col == "yyyyq":  # 19261 -> 1926Q1
        out["date"] = dates.map(lambda v: f"{v // 10}Q{v % 10}", na_action="ignore")
    else:
        out["date"] = dates.astype(str)
    out["index"] = df[cols["index"]]
    out["earnings"] = df[cols["e12"]]
    out["price"] = df[cols["index"]]
    out = out.dropna()
    out = out[(out["index"] > 0) & (out["earnings"] > 0)]
    out.to_csv(out_path, index=False)
    print(f"wrote {out_path}: {len(out)} rows ({out['date'].iloc[0]}..{out['date'].iloc[-1]})")


def main() -> None:
    if len(sys.argv) < 2:
        raise SystemExit(__doc__)
    src = sys.argv[1]
    outdir = sys.argv[2] if len(sys.argv) > 2 else "data"
    os.makedirs(outdir, exist_ok=True)

    local = src
    if src.startswith("http"):
        local = os.path.join(outdir, "goyal_predictor_data.xlsx")
        print(f"downloading {src} -> {local}")
        urllib.request.urlretrieve(src, local)

    sheets = pd.read_excel(local, sheet_name=None)
    names = {name.lower(): name for name in sheets}
    if "monthly" in names:
        export(sheets[names["monthly"]], "yyyymm", os.path.join(outdir, "goyal_monthly.csv"))
    if "quarterly" in names:
        export(sheets[names["quarterly"]], "yyyyq", os.path.join(outdir, "goyal_quarterly.csv"))
    if "monthly" not in names and "quarterly" not in names:
        raise SystemExit(f"no Monthly/Quarterly sheets found; sheets: {list(sheets)}")


if __name__ == "__main__":
    main()
