#!/usr/bin/env python3
"""
app.py - Root level launcher
This file puts the backend/ directory on the path and runs its command line
"""

import os
import sys

# Add backend directory to Python path
backend_path = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'backend')
sys.path.insert(0, backend_path)

try:
    from app import main
except ImportError as e:
    print(f"❌ Error importing the workbench from backend directory: {e}")
    print("📁 Directory contents:", os.listdir(backend_path))
    sys.exit(2)

if __name__ == "__main__":
    sys.exit(main())
