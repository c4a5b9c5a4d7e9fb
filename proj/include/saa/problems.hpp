#pragma once

#include <memory>
#include <string>
#include <vector>

#include "saa/program.hpp"

namespace saa {

// Built-in example programs, addressable by id:
//   "p1"      box [-1,1],  min |u|  s.t. E[(u+w, u-w)] = 0,      w ~ U[-1,1]
//   "p2"      box [-1,1],  min |u|  s.t. E[u^2 + w] = 0,         w ~ U[-1,1]
//   "twomode" box [-1,1],  min E[w u] s.t. E[u^2 - 1/4 + w] = 0, w ~ U[-1,1]
//   "r51"     box [-1,1]^2, min u1 s.t. g(u) <= 0 with
//             g = (u2 - u1 max(u1,0), -u2 - u1 max(u1,0))  (deterministic)
//   "sin3"    equality family h(u,w) = sin(3u) w on [-1,1], w ~ U[-1,1]
std::shared_ptr<const StochasticProgram> make_problem(const std::string& id);

bool is_known_problem(const std::string& id);
std::vector<std::string> known_problems();

// Solution set of the limit problem P, used as the sweep reference.
std::vector<Eigen::VectorXd> reference_solutions(const std::string& id);

}  // namespace saa
