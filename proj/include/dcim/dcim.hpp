// dcim - immersions of Delta-complexes via presented inverse monoids
//
// Umbrella header.

#ifndef DCIM_DCIM_HPP_
#define DCIM_DCIM_HPP_

#include "automata.hpp"
#include "complex.hpp"
#include "core.hpp"
#include "coset.hpp"
#include "immersion.hpp"
#include "io.hpp"
#include "monoid.hpp"

#endif  // DCIM_DCIM_HPP_
