# toralaut/core/__init__.py
