__version__ = "1.0.0"
__license__ = "GPLv3"
__description__ = "psiparam parametrizes probability distributions with wave-functions on the unit hypersphere"
__author__ = ""
