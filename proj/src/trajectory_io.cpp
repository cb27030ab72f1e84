#include "zlab/trajectory_io.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace zlab {

namespace {

constexpr char kMagic[8] = {'Z', 'L', 'A', 'B', 'T', 'R', 'J', '1'};

template <class T>
void put(std::ofstream& f, T v) {
  f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::ifstream& f) {
  T v{};
  f.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!f) throw std::runtime_error("read_trajectory: truncated file");
  return v;
}

}  // namespace

void write_trajectory(const std::string& path, const Trajectory& traj) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("write_trajectory: cannot open " + tmp);
    const bool has_v = !traj.snapshots.empty() && !traj.snapshots.front().v.values.empty();
    f.write(kMagic, 8);
    put<std::uint32_t>(f, static_cast<std::uint32_t>(traj.config.grid.n));
    put<std::uint32_t>(f, static_cast<std::uint32_t>(traj.snapshots.size()));
    put<std::uint32_t>(f, has_v ? 1u : 0u);
    put<std::uint32_t>(f, 0u);
    put<double>(f, traj.config.grid.m_box);
    put<double>(f, traj.config.dt);
    put<double>(f, traj.config.wave_speed);
    for (const auto& s : traj.snapshots) {
      put<double>(f, s.t);
      f.write(reinterpret_cast<const char*>(s.u.values.data()), s.u.values.size() * sizeof(cplx));
      if (has_v) f.write(reinterpret_cast<const char*>(s.v.values.data()), s.v.values.size() * sizeof(cplx));
    }
    if (!f) throw std::runtime_error("write_trajectory: write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

Trajectory read_trajectory(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("read_trajectory: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("read_trajectory: bad magic");
  const auto n = get<std::uint32_t>(f);
  const auto count = get<std::uint32_t>(f);
  const auto flags = get<std::uint32_t>(f);
  (void)get<std::uint32_t>(f);
  Trajectory traj;
  const double m_box = get<double>(f);
  traj.config.grid = FrequencyGrid(m_box, static_cast<int>(n));
  traj.config.dt = get<double>(f);
  traj.config.wave_speed = get<double>(f);
  for (std::uint32_t i = 0; i < count; ++i) {
    SolverState s;
    s.t = get<double>(f);
    s.u = SpatialField(traj.config.grid);
    f.read(reinterpret_cast<char*>(s.u.values.data()), s.u.values.size() * sizeof(cplx));
    if (flags & 1u) {
      s.v = SpatialField(traj.config.grid);
      f.read(reinterpret_cast<char*>(s.v.values.data()), s.v.values.size() * sizeof(cplx));
    }
    if (!f) throw std::runtime_error("read_trajectory: truncated snapshot");
    traj.snapshots.push_back(std::move(s));
  }
  return traj;
}

}  // namespace zlab
