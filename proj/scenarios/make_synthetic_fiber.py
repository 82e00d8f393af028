#!/usr/bin/env python3
"""Regenerates the synthetic fiber tables shipped with the scenarios.

Attenuation: parabola in wavelength with a 0.17 dB/km minimum at 1560 nm.
Raman gain: triangular, slope 0.0284 1/(W km THz) up to a 14 THz shift, then
linear decay to zero at 20 THz.
"""
from pathlib import Path

here = Path(__file__).resolve().parent

with open(here / "synthetic_attenuation.csv", "w") as f:
    f.write("# synthetic wideband attenuation, parabola with 0.17 dB/km minimum at 1560 nm\n")
    f.write("wavelength_nm,loss_db_per_km\n")
    for wl in range(1450, 1645, 5):
        f.write(f"{wl},{0.17 + 4e-6 * (wl - 1560) ** 2:.6f}\n")

with open(here / "flat_attenuation.csv", "w") as f:
    f.write("# frequency-flat loss\n")
    f.write("wavelength_nm,loss_db_per_km\n")
    for wl in range(1450, 1645, 5):
        f.write(f"{wl},0.170000\n")

slope, peak, cutoff = 0.0284, 14.0, 20.0
with open(here / "synthetic_raman.csv", "w") as f:
    f.write("# synthetic triangular Raman gain (g_R / A_eff)\n")
    f.write("shift_thz,gain_per_w_per_km\n")
    f.write("0,0\n")
    f.write(f"{peak:g},{slope * peak:.6f}\n")
    f.write(f"{cutoff:g},0\n")

with open(here / "no_raman.csv", "w") as f:
    f.write("# ISRS disabled\n")
    f.write("shift_thz,gain_per_w_per_km\n")
    f.write("0,0\n")
