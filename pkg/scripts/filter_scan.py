"""Indistinguishability and purity versus signal filter width at fixed idler
filter, and versus a shared filter width."""

import argparse
from pathlib import Path

import numpy as np

from spdc_hom import units
from spdc_hom.config import load_config, reference_config_path
from spdc_hom.engineering import filter_scan, perfect_indistinguishability_filter


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(reference_config_path()))
    ap.add_argument("--idler-nm", type=float, default=1.0)
    ap.add_argument("--outdir", default="results")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    cfg = load_config(args.config).source
    s_nm, i_nm = cfg.signal_wavelength / units.NM, cfg.idler_wavelength / units.NM
    sigma_i = units.fwhm_nm_to_sigma(i_nm, args.idler_nm)
    rng = (units.fwhm_nm_to_sigma(s_nm, 0.1), units.fwhm_nm_to_sigma(s_nm, 3.0), 291)

    columns, header = [], []
    for fixed, tag in ((("idler", sigma_i), "fixed_idler"), (None, "shared")):
        for objective in ("indistinguishability", "purity"):
            res = filter_scan(cfg, fixed, rng, objective=objective)
            if not columns:
                columns.append(res.fwhm_nm())
                header.append("fwhm_nm")
            columns.append(res.objective_values)
            header.append(f"{objective}_{tag}")
            print(f"{objective:<21} {tag:<12} argmax {res.argmax_fwhm_nm:.4f} nm  value {res.argmax_value:.4f}")
    np.savetxt(out / "filter_scan.csv", np.column_stack(columns), delimiter=",", header=",".join(header),
               comments="", fmt="%.9g")
    cond = perfect_indistinguishability_filter(cfg, sigma_i)
    if cond.feasible:
        print(f"closed-form signal filter: {units.sigma_to_fwhm_nm(s_nm, cond.sigma_signal):.4f} nm")
    else:
        print("closed-form signal filter: infeasible")


if __name__ == "__main__":
    main()
