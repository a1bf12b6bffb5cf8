#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "ks/kinetics.hpp"

namespace ks {

// Uniform rectangular cell-centered grid in 1D/2D with homogeneous Neumann
// (zero-flux) boundaries. In 1D the y axis degenerates to a single row.
struct Grid {
  int dim = 1;
  std::array<int, 2> cells{0, 1};
  std::array<double, 2> length{0.0, 0.0};
  std::array<double, 2> h{0.0, 0.0};
  double cell_volume = 0.0;

  int nx() const { return cells[0]; }
  int ny() const { return cells[1]; }
  std::size_t size() const { return static_cast<std::size_t>(cells[0]) * cells[1]; }
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(j) * cells[0] + i; }
  double x_center(int i) const { return (i + 0.5) * h[0]; }
  double y_center(int j) const { return (j + 0.5) * h[1]; }
  double volume() const { return dim == 1 ? length[0] : length[0] * length[1]; }

  bool same_as(const Grid& o) const {
    return dim == o.dim && cells == o.cells && length == o.length;
  }
};

Grid build_grid(int dim, const std::array<double, 2>& lengths,
                const std::array<int, 2>& cells);
Grid build_grid_1d(double length, int cells);
Grid build_grid_2d(double lx, double ly, int nx, int ny);

// Cell-averaged scalar field.
struct Field {
  Grid grid;
  std::vector<double> data;

  static Field zeros(const Grid& g) { return {g, std::vector<double>(g.size(), 0.0)}; }
  static Field constant(const Grid& g, double c) {
    return {g, std::vector<double>(g.size(), c)};
  }
  double& operator[](std::size_t i) { return data[i]; }
  double operator[](std::size_t i) const { return data[i]; }
  std::size_t size() const { return data.size(); }
};

// cell_volume * sum(values), compensated summation (fixed order, thread-free).
double integrate(const Field& f);

double max_value(const Field& f);
double min_value(const Field& f);

// Standard 3/5-point Neumann Laplacian in flux form; conservative.
Field laplacian_neumann(const Field& f);

// div(D(u) grad u) with arithmetic-mean face diffusivity; conservative.
Field diffusive_divergence(const Field& u, const Kinetics& k);

// div(S(u) grad v) with donor-cell upwinding of S(u) against the face
// gradient of v; conservative.
Field chemotactic_divergence(const Field& u, const Field& v, const Kinetics& k);

} // namespace ks
