import hypothesis
import numpy as np
from hypothesis import strategies as st

import clutchopt as co

hypothesis.settings.register_profile("default", deadline=None, max_examples=60)
hypothesis.settings.register_profile("fast", deadline=None, max_examples=10)
hypothesis.settings.load_profile("default")

finite_heights = st.floats(min_value=-50.0, max_value=50.0, allow_nan=False)


@st.composite
def disk_stacks(draw, max_disks=4, max_segments=6):
    nd = draw(st.integers(1, max_disks))
    ns = draw(st.integers(1, max_segments))
    rows = draw(
        st.lists(
            st.lists(finite_heights, min_size=ns, max_size=ns),
            min_size=nd,
            max_size=nd,
        )
    )
    return co.DiskStack(np.array(rows, dtype=np.float64))


@st.composite
def deviation_matrices(draw, max_disks=4, max_segments=6):
    return co.deviations(draw(disk_stacks(max_disks, max_segments)))


@st.composite
def devs_with_shifts(draw, max_disks=4, max_segments=6):
    devs = draw(deviation_matrices(max_disks, max_segments))
    shifts = tuple(
        draw(st.integers(0, devs.n_segments - 1)) for _ in range(devs.n_disks)
    )
    return devs, shifts
