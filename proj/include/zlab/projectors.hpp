#pragma once

#include <string>
#include <vector>

#include "zlab/grid.hpp"

namespace zlab {

enum class Flavor { S, WPlus, WMinus, WFull };

Flavor parse_flavor(const std::string& name);
std::string flavor_name(Flavor f);

// Modulation variable: tau+|xi|^2 (S), tau+|xi| (W+), tau-|xi| (W-), |tau|-|xi| (Wfull).
double modulation(Flavor f, double tau, double rxi);

// Flavor of the conjugated field: W+ <-> W-, S and Wfull are mapped to
// themselves only formally (S of a conjugate is the -tau+|xi|^2 surface).
Flavor conjugate_flavor(Flavor f);

struct AngularSector {
  int A = 1;
  int j = 0;
  AngularSector() = default;
  AngularSector(int A, int j);
};

// Smallest dyadic N whose band covers every lattice frequency.
double top_dyadic_band(const FrequencyGrid& g);
// Smallest dyadic L whose band covers every modulation value on the lattice.
double top_modulation_band(const SpaceTimeGrid& g, Flavor f);

SpatialField project_dyadic(const SpatialField& u, double N);
SpaceTimeField project_dyadic(const SpaceTimeField& w, double N);
SpaceTimeField project_modulation(const SpaceTimeField& w, double L, Flavor f);
SpatialField project_angular(const SpatialField& u, const AngularSector& s);
SpaceTimeField project_angular(const SpaceTimeField& w, const AngularSector& s);

// Angular multiplier value at the lattice point xi; xi = 0 belongs to sector 0.
double angular_weight(const AngularSector& s, double xi1, double xi2);

struct WhitneyTile {
  int A;
  int j1;
  int j2;
  bool parallel;
};

// Cyclic index distance min(|a-b|, A-|a-b|).
int cyclic_distance(int a, int b, int A);

// Parallel tiles {A = M, |j1-j2| <= 16} and transverse tiles
// {64 <= A <= M, 16 <= |j1-j2| <= 32}.
std::vector<WhitneyTile> whitney_tiles(int M);

// Sector index of the direction theta at level A (the sector whose center
// line is closest to the line spanned by theta).
int sector_of(int A, double theta);

}  // namespace zlab
