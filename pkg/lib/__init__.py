from .polyCore.polynomial import Polynomial
from .polyCore.constants import compute_constants, sine_family_constants, r_sweep
from .dynamics.thresholdTower import ThresholdTower
from .dynamics.orbitClassifier import OrbitClassifier, classify_orbit
from .dynamics.maxModulus import max_modulus_sequences
from .distortion.gridSquare import GridSquare
from .distortion.estimators import estimate, check_LN
from .distortion.chainDistortion import chain_distortion, build_chain
from .distortion.boundarySquares import count_boundary_squares
from .distortion.lemmaSuite import run_lemma_suite
from .census.densitySampler import sample_square_density
from .census.nestingLevel import build_nesting_level
from .census.stripCensus import strip_census
from .render.stripRenderer import render_strip
from .render.imageWriter import write_image, encode_ppm
from .tileScheduler import TileScheduler
from .logger import LoggerManager
from .models import format_error
