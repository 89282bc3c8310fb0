from .forms import OmegaForm, bergman, omega2, ordered_pairs, set_partitions
from .recursion import OmegaError, KernelK, KernelKtilde, clear_cache, kernels, omega_n

__all__ = [
    "OmegaForm",
    "bergman",
    "omega2",
    "ordered_pairs",
    "set_partitions",
    "OmegaError",
    "KernelK",
    "KernelKtilde",
    "clear_cache",
    "kernels",
    "omega_n",
]
