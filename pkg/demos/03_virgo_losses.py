"""How 13.8 dB of generated squeezing shrinks to ~3 dB after 46 % loss.

Run: python3 demos/03_virgo_losses.py
"""
from sqlnoise import gaussian as gs
from sqlnoise.squeezer import EfficiencyChain, db_to_r, effective_db

chain = EfficiencyChain((("injection", 0.9), ("readout", 0.6)))

# %% stage by stage
print(f"{'after':>10} {'eta':>6} {'sqz dB':>8} {'anti dB':>8}")
for sub in chain.prefixes():
    label = sub.stages[-1][0] if len(sub) else "generated"
    s, a = effective_db(13.8, sub)
    print(f"{label:>10} {sub.total:6.3f} {s:8.3f} {a:8.3f}")

# %% the same through the covariance matrix
state = gs.loss_channel(gs.squeezed(db_to_r(13.8)), chain.total)
lo, hi = gs.principal_variances(state)
print(f"std devs over vacuum: {(lo / 0.25) ** 0.5:.3f} x {(hi / 0.25) ** 0.5:.3f}")
print(f"uncertainty product {gs.uncertainty_product(state):.3f}, purity {gs.purity(state):.3f}")
