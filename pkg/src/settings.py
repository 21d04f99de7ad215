from os import environ

ENVIRONMENT = environ.get("ENVIRONMENT", "development")

in_dev_environment = ENVIRONMENT == "development"

# Machine
DEFAULT_FUEL = int(environ.get("LAMBDAC_FUEL", "1000"))

# Stratified least-pole search
DEPTH_CAP = int(environ.get("LAMBDAC_DEPTH_CAP", "30"))
VOTING_SLACK = int(environ.get("LAMBDAC_VOTING_SLACK", "2"))

# Exhaustive enumeration bounds
CLOSURE_LIMIT = int(environ.get("LAMBDAC_CLOSURE_LIMIT", "12"))
POLE_LIMIT = int(environ.get("LAMBDAC_POLE_LIMIT", "16"))
TABLE_LIMIT = int(environ.get("LAMBDAC_TABLE_LIMIT", str(2**20)))
WORLD_LIMIT = int(environ.get("LAMBDAC_WORLD_LIMIT", "64"))
INDEX_LIMIT = int(environ.get("LAMBDAC_INDEX_LIMIT", "12"))

# Reproducible sampling
DEFAULT_SEED = int(environ.get("LAMBDAC_SEED", "0"))
DEFAULT_SAMPLES = int(environ.get("LAMBDAC_SAMPLES", "100"))
