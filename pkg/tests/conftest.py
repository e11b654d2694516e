"""
Pytest configuration file for tests.

Puts the project root on sys.path so the tests import the working tree
rather than an installed copy of fermsig.
"""

import os
import sys

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
