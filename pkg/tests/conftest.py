# Empty on purpose: anchors pytest's rootdir so that sibling helper modules
# (oracles.py) are importable from every test file.
