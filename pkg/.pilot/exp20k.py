import sys
import numpy as np
import hetnet_ee as he
from hetnet_ee.nn import TrainingConfig, build_cnn, build_dnn, train
from hetnet_ee.nn.model import ModelOutput
from hetnet_ee.nn.decode import decode_allocation
from hetnet_ee.nn.preprocess import preprocess_batch
from hetnet_ee.report import evaluate_methods

cfg = he.default_scenario()

def cached(path, count, seed):
    import os
    if os.path.exists(path):
        return he.load_dataset(path)
    ds = he.generate_dataset(cfg, count=count, master_seed=seed, grid_levels=10, jobs=2)
    he.save_dataset(ds, path)
    return ds

print("loading/generating datasets...", flush=True)
train_ds = cached(".pilot/train20k.ds", 20000, 1001)
test_ds = cached(".pilot/test500.ds", 500, 2002)
cat = he.enumerate_assignments(cfg)

gains = np.stack([s.channel.gains for s in test_ds.samples])
ee_opt = np.array([s.ee_opt for s in test_ds.samples])


def xi_of(model):
    x = preprocess_batch(gains, *model.norm_stats)
    out, _ = model.forward(x)
    xs = []
    for i, s in enumerate(test_ds.samples):
        alloc = decode_allocation(ModelOutput(out.class_probs[i], out.power_norm[i]), cfg, cat)
        ee = he.energy_efficiency(s.channel, alloc.indicator, alloc.power_w, cfg)
        xs.append(abs(ee - ee_opt[i]) / ee_opt[i])
    return np.array(xs)


def staged(arch, build, seed, stages, w_mse):
    """Train in stages, printing test-xi after each stage."""
    model = build(cfg, seed=seed)
    total = 0
    for i, (epochs, lr) in enumerate(stages):
        tc = TrainingConfig(epochs=epochs, batch_size=128, learning_rate=lr,
                            seed=seed + 1000 * i, w_mse=w_mse,
                            validation_fraction=0.05)
        hist = train(model, train_ds, tc)
        total += epochs
        xi = xi_of(model)
        h = hist[-1]
        print(f"{arch} seed{seed} wmse{w_mse} ep{total}: frac<=0.10 {np.mean(xi<=0.10):.3f} "
              f"median {np.median(xi):.4f} | val ce {h.val_ce:.3f} mse {h.val_mse:.5f}", flush=True)
    return model

which = sys.argv[1] if len(sys.argv) > 1 else "a"
if which == "a":
    staged("cnn", build_cnn, 0, [(20, 1e-3), (20, 1e-3), (20, 5e-4), (20, 2.5e-4)], 1.0)
elif which == "b":
    staged("cnn", build_cnn, 0, [(20, 1e-3), (20, 1e-3), (20, 5e-4), (20, 2.5e-4)], 10.0)
elif which == "d":
    staged("dnn", build_dnn, 0, [(20, 1e-3), (20, 1e-3), (20, 5e-4), (20, 2.5e-4)], 1.0)
