# settings.py - environment driven configuration
import os
import sys

from dotenv import load_dotenv

load_dotenv()

SEED = int(os.getenv("SEED", "1729"))
CUTOFF_B = int(os.getenv("CUTOFF_B", "16"))
MAX_ITER = int(os.getenv("MAX_ITER", "12"))
SAMPLES_PER_AXIOM = int(os.getenv("SAMPLES_PER_AXIOM", "24"))
FRAGMENT_LIMIT = int(os.getenv("FRAGMENT_LIMIT", "4000"))
LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
SCRIPT_TIME_LIMIT = float(os.getenv("SCRIPT_TIME_LIMIT", "5.0"))

# Gödel codes run to many thousands of digits
INT_MAX_STR_DIGITS = int(os.getenv("INT_MAX_STR_DIGITS", "0"))
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(INT_MAX_STR_DIGITS)

