//! Fourier-spectral instanton lab on the flat 4-torus.
