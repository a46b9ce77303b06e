"""Lee coupled-oscillator workbench."""
