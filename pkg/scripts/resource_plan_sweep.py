#!/usr/bin/env python3
"""Sweep the tile-count planner over both estimator envelopes.

Prints one row per parameter point with the per-stage split, stream count,
and whether off-chip memory is needed. Rows that violate a device
constraint are flagged.
"""

import scdkit as sk


def sweep_fam():
    print("FAM  (window N, channels Np -> tiles)")
    print(f"{'N':>6} {'Np':>5} {'framing':>8} {'demod':>6} {'fft2':>5} "
          f"{'total':>6} {'plio':>5} flags")
    for log_n in range(7, 13):
        for log_np in (4, 6, 8):
            report = sk.plan_fam(1 << log_n, 1 << log_np)
            flags = "VIOLATION " * len(report.violations)
            print(f"{1 << log_n:>6} {1 << log_np:>5} "
                  f"{report.stage_tiles['framing']:>8} "
                  f"{report.stage_tiles['demodulate']:>6} "
                  f"{report.stage_tiles['fft2']:>5} {report.total_tiles:>6} "
                  f"{report.plio_streams:>5} {flags}")


def sweep_ssca():
    print("\nSSCA (window N, channels Np, stage split M1 x M2 -> tiles)")
    print(f"{'N':>9} {'Np':>5} {'M1':>5} {'M2':>5} {'cdp':>4} {'fft2d':>6} "
          f"{'total':>6} {'ddr':>4} flags")
    for log_n in (12, 14, 16, 18, 20):
        for np_ch in (32, 64, 256):
            cfg = sk.SscaConfig(N=1 << log_n, Np=np_ch)
            report = sk.plan_ssca(cfg.N, cfg.Np, cfg.M1)
            flags = "VIOLATION " * len(report.violations)
            print(f"{cfg.N:>9} {np_ch:>5} {cfg.M1:>5} {cfg.M2:>5} "
                  f"{report.stage_tiles['cdp']:>4} "
                  f"{report.stage_tiles['fft_2d']:>6} {report.total_tiles:>6} "
                  f"{'yes' if report.ddr_required else 'no':>4} {flags}")


if __name__ == "__main__":
    sweep_fam()
    sweep_ssca()
