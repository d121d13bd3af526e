import os

# Validation tolerances, relative to max(1, scale of the matrix)
IMAGINARITY_HERMITIAN_TOL = 1e-12
IMAGINARITY_TRACE_TOL = 1e-12
IMAGINARITY_PSD_TOL = 1e-12

# Spectral calculus
IMAGINARITY_CLIP_TOL = 1e-12
IMAGINARITY_PD_TOL = 1e-10

# Channels
IMAGINARITY_COMPLETENESS_TOL = 1e-10
IMAGINARITY_P_FLOOR = 1e-12
IMAGINARITY_DROPPED_MASS_LIMIT = 1e-9

# A state counts as real for the measures when M(rho) is at most this
IMAGINARITY_FAITHFULNESS_TOL = 1e-9

# Property suites
IMAGINARITY_PROPERTY_TOLERANCE = 1e-8
IMAGINARITY_EQUALITY_TOLERANCE = 1e-9
IMAGINARITY_PROPERTY_TRIALS = 200
IMAGINARITY_PROPERTY_DIMS = (2, 3, 4)
IMAGINARITY_PROPERTY_SEED = 0
IMAGINARITY_PROPERTY_WORKERS = 1
IMAGINARITY_REGENERATE_ATTEMPTS = 5

# Parameter grids
IMAGINARITY_ALPHA_GRID = (0.1, 0.25, 0.5, 0.75, 0.9)
IMAGINARITY_Z_CEILING = 0.95
IMAGINARITY_Q_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)
IMAGINARITY_LAMBDA_GRID = (0.1, 0.3, 0.5, 0.7, 0.9)
IMAGINARITY_LEMMA_2_SCALES = (0.5, 1.0, 2.0)

IMAGINARITY_ORACLE_DPS = 50
IMAGINARITY_SIGNIFICANT_DIGITS = 12

IMAGINARITY_OUTPUT_DIR = os.environ.get("IMAGINARITY_OUTPUT_DIR", ".")

IMAGINARITY_MEASURES = {
    "umegaki": "imaginarity.measures.engines.UmegakiMeasure",
    "tsallis": "imaginarity.measures.engines.TsallisMeasure",
    "renyi-az": "imaginarity.measures.engines.RenyiMeasure",
    "operator": "imaginarity.measures.engines.OperatorMeasure",
}

IMAGINARITY_LOG_HANDLER = {
    "class": "imaginarity.log.ImaginarityLogHandler",
    "level": "WARNING",
}
