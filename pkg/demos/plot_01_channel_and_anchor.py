"""
Link budget and anchor-node trilateration
=========================================

Three APs sit 5 m from the anchor node. We compute the baseline RSS of each
link, invert it back to ranges, and trilaterate the anchor from those ranges.
"""

import numpy as np

from isac_intrusion import Position2D, RadioConfig, baseline_rss, localize_anchor, path_loss_db, rss_to_distance
from isac_intrusion.scenario import table1_constellation

radio = RadioConfig()
anchor = Position2D(5.0, 5.0)
aps = table1_constellation(anchor)

###############################################################################
# Path loss grows 10 n log10(d) with n = 3, so doubling a link costs ~9 dB.
for d in (1.0, 2.5, 5.0, 10.0):
    print(f"d = {d:5.1f} m  path loss = {path_loss_db(d, radio):6.2f} dB")

###############################################################################
# Baseline RSS at the anchor; the default offset puts 5 m links near -39 dB.
rss = [baseline_rss(ap, anchor, radio) for ap in aps.positions]
for k, (ap, r) in enumerate(zip(aps.positions, rss), start=1):
    print(f"AP{k} at ({ap.x:5.2f}, {ap.y:5.2f})  RSS = {r:.2f} dB  ->  {rss_to_distance(r, radio):.6f} m")

###############################################################################
# Clean RSS recovers the anchor exactly. A 1 dB bias on every link shrinks all
# ranges by the same factor; with the APs on a ring around the anchor the
# bias cancels in position and only shows up in the range residual.
fix = localize_anchor(aps, rss, radio)
print("noiseless fix:", fix)
biased = localize_anchor(aps, np.asarray(rss) + 1.0, radio)
err = np.hypot(biased.position.x - anchor.x, biased.position.y - anchor.y)
print(f"+1 dB bias fix: ({biased.position.x:.4f}, {biased.position.y:.4f}), error {err:.4f} m, "
      f"residual {biased.residual_norm:.4f} m")
