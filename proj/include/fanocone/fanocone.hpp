// Umbrella header.

#ifndef FANOCONE_FANOCONE_HPP
#define FANOCONE_FANOCONE_HPP

#include "error.hpp"
#include "rational.hpp"
#include "lattice_cones.hpp"
#include "toric_singularity.hpp"
#include "volume.hpp"
#include "futaki.hpp"
#include "index_character.hpp"
#include "monomial_ideals.hpp"
#include "git_toy.hpp"
#include "json_io.hpp"

#endif
