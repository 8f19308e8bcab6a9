# conegeo: Hilbert's and Thompson's metric geometry on symmetric cones
