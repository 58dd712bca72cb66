import os
from dotenv import load_dotenv

# Загружаем переменные окружения из .env файла
load_dotenv()

# Logging
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
LOG_FILE = os.getenv("QCODES_LOG_FILE", "")

# Largest field GF(p^k) built without allow_large
MAX_FIELD_ORDER = int(os.getenv("QCODES_MAX_FIELD_ORDER", str(2 ** 20)))

# Largest number of codewords enumerated by min_weight / min_weight_diff
MAX_ENUMERATION = int(os.getenv("QCODES_MAX_ENUMERATION", str(2 ** 24)))

# Largest coset-leader table (number of syndromes)
SYNDROME_TABLE_LIMIT = int(os.getenv("QCODES_SYNDROME_TABLE_LIMIT", str(2 ** 20)))

# Rows per vectorized enumeration step
ENUMERATION_CHUNK = int(os.getenv("QCODES_ENUMERATION_CHUNK", "4096"))

# Seed used when the CLI gets no --seed (it is printed in the report)
DEFAULT_SEED = int(os.getenv("QCODES_DEFAULT_SEED", "20260101"))

# Validation
if MAX_FIELD_ORDER < 2:
    raise ValueError("QCODES_MAX_FIELD_ORDER must be at least 2")

if MAX_ENUMERATION < 1 or SYNDROME_TABLE_LIMIT < 1:
    raise ValueError("QCODES_MAX_ENUMERATION and QCODES_SYNDROME_TABLE_LIMIT must be positive")

if ENUMERATION_CHUNK < 1:
    raise ValueError("QCODES_ENUMERATION_CHUNK must be positive")
