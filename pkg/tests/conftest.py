import os
import sys

# make the shared fixture/oracle/generator helpers importable from any cwd
sys.path.insert(0, os.path.dirname(__file__))
