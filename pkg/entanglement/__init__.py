# Entanglement Module
# Schmidt spectra, entropies and best low-rank overlaps
from .eckart_young import best_rank_one_overlap, eckart_young_overlap, random_product_overlap
from .entropy import (
    EntropySandwich,
    check_entropy_sandwich,
    entropy,
    min_entropy,
    renyi_entropy,
    von_neumann,
)
from .spectrum import SchmidtSpectrum, schmidt_spectrum, schmidt_values, spectrum_from_matrix
