"""Compare scheme lengths on random instances as the common set grows."""

import numpy as np

from tsuic import generate_random_instance, run_scheme, verify_code
from tsuic.schemes import SCHEME_NAMES

n, trials = 6, 30
for overlap in range(0, n + 1, 2):
    lengths = {name: [] for name in SCHEME_NAMES}
    for seed in range(trials):
        inst = generate_random_instance(n, 0.45, split=f"overlap:{overlap}", seed=seed)
        for name in SCHEME_NAMES:
            res = run_scheme(inst, name)
            assert verify_code(inst, res.code).passed
            lengths[name].append(res.length)
    means = "  ".join(f"{name}={np.mean(v):.2f}" for name, v in lengths.items())
    print(f"|common|={overlap}: {means}")

# more shared messages means fewer sender constraints, so lengths should drop
