#pragma once

#include <string>
#include <vector>

#include "swsynth/log_value.hpp"

namespace swsynth {

enum class Transfer { exp, sigmoid, relu, step };

std::string transfer_name(Transfer t);
Transfer transfer_from_name(const std::string& name);

/// One hidden unit: c * psi(<a, x> + b).
struct ExpUnit {
  LogValue coeff;
  std::vector<double> weight;
  double bias = 0.0;
};

/// Shallow network: sum of m units with a common transfer function.
struct ExpNetwork {
  int dim = 1;
  Transfer transfer = Transfer::exp;
  std::vector<ExpUnit> units;

  std::size_t unit_count() const { return units.size(); }
};

/// Sum of c_i * psi(<a_i, x> + b_i). For the exp transfer each term is
/// formed in log domain (coeff.log_abs + <a,x> + b) and the sum goes
/// through lv_sum; other transfers evaluate in plain doubles.
double eval_network(const ExpNetwork& net, std::span<const double> x);

/// Collapse exp units sharing a weight vector (componentwise within tol).
/// Bias folds into the coefficient first (c e^{<a,x>+b} = (c e^b) e^{<a,x>}),
/// so merging keys on weight alone; merged units carry bias 0. Units whose
/// coefficients cancel to sign 0 are dropped.
ExpNetwork merge_units(const ExpNetwork& net, double tol = 0.0);

/// JSON (de)serialization of the network file format. Writers emit shortest
/// round-trip decimals, so identical networks produce identical bytes.
std::string network_to_json(const ExpNetwork& net);
ExpNetwork network_from_json(const std::string& text);
void save_network(const ExpNetwork& net, const std::string& path);
ExpNetwork load_network(const std::string& path);

}  // namespace swsynth
