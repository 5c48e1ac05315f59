#include "swsynth/expnet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

#include "json.hpp"

namespace swsynth {

std::string transfer_name(Transfer t) {
  switch (t) {
    case Transfer::exp: return "exp";
    case Transfer::sigmoid: return "sigmoid";
    case Transfer::relu: return "relu";
    case Transfer::step: return "step";
  }
  throw std::logic_error("unknown transfer");
}

Transfer transfer_from_name(const std::string& name) {
  if (name == "exp") return Transfer::exp;
  if (name == "sigmoid") return Transfer::sigmoid;
  if (name == "relu") return Transfer::relu;
  if (name == "step") return Transfer::step;
  throw std::invalid_argument("unknown transfer: " + name);
}

namespace {

double apply_transfer(Transfer t, double z) {
  switch (t) {
    case Transfer::exp: return std::exp(z);
    case Transfer::sigmoid: return 1.0 / (1.0 + std::exp(-z));
    case Transfer::relu: return z > 0.0 ? z : 0.0;
    case Transfer::step: return z >= 0.0 ? 1.0 : 0.0;
  }
  throw std::logic_error("unknown transfer");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

double eval_network(const ExpNetwork& net, std::span<const double> x) {
  if (static_cast<int>(x.size()) != net.dim)
    throw std::invalid_argument("eval_network: point dimension mismatch");

  if (net.transfer == Transfer::exp) {
    std::vector<LogValue> terms;
    terms.reserve(net.units.size());
    for (const auto& u : net.units) {
      if (u.coeff.sign == 0) continue;
      terms.push_back(LogValue{u.coeff.sign, u.coeff.log_abs + dot(u.weight, x) + u.bias});
    }
    return lv_sum(terms).value.to_real();
  }

  double s = 0.0;
  for (const auto& u : net.units)
    s += u.coeff.to_real() * apply_transfer(net.transfer, dot(u.weight, x) + u.bias);
  return s;
}

ExpNetwork merge_units(const ExpNetwork& net, double tol) {
  if (net.transfer != Transfer::exp)
    throw std::invalid_argument("merge_units: only exp networks can be merged");

  // Fold biases, then group weights. With tol = 0 the key is the exact
  // weight vector; with tol > 0 a unit joins the first group within tol.
  struct Group {
    std::vector<double> weight;
    std::vector<LogValue> coeffs;
  };
  std::vector<Group> groups;
  for (const auto& u : net.units) {
    LogValue folded = u.coeff;
    if (folded.sign != 0) folded.log_abs += u.bias;
    auto matches = [&](const Group& g) {
      for (int i = 0; i < net.dim; ++i)
        if (std::abs(g.weight[i] - u.weight[i]) > tol) return false;
      return true;
    };
    auto it = std::find_if(groups.begin(), groups.end(), matches);
    if (it == groups.end()) {
      groups.push_back({u.weight, {folded}});
    } else {
      it->coeffs.push_back(folded);
    }
  }

  ExpNetwork out;
  out.dim = net.dim;
  out.transfer = Transfer::exp;
  for (auto& g : groups) {
    LogValue c = lv_sum(g.coeffs).value;
    if (c.sign == 0) continue;
    out.units.push_back({c, std::move(g.weight), 0.0});
  }
  return out;
}

std::string network_to_json(const ExpNetwork& net) {
  nlohmann::ordered_json j;
  j["dim"] = net.dim;
  j["transfer"] = transfer_name(net.transfer);
  j["units"] = nlohmann::ordered_json::array();
  for (const auto& u : net.units) {
    nlohmann::ordered_json ju;
    ju["coeff_sign"] = u.coeff.sign;
    ju["coeff_log_abs"] = u.coeff.sign == 0 ? 0.0 : u.coeff.log_abs;
    ju["weight"] = u.weight;
    ju["bias"] = u.bias;
    j["units"].push_back(std::move(ju));
  }
  return j.dump(2) + "\n";
}

ExpNetwork network_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  ExpNetwork net;
  net.dim = j.at("dim").get<int>();
  if (net.dim < 1) throw std::invalid_argument("network dim must be >= 1");
  net.transfer = transfer_from_name(j.at("transfer").get<std::string>());
  for (const auto& ju : j.at("units")) {
    ExpUnit u;
    int sign = ju.at("coeff_sign").get<int>();
    u.coeff = sign == 0 ? LogValue::zero()
                        : LogValue::from_log(sign, ju.at("coeff_log_abs").get<double>());
    u.weight = ju.at("weight").get<std::vector<double>>();
    if (static_cast<int>(u.weight.size()) != net.dim)
      throw std::invalid_argument("unit weight length does not match network dim");
    u.bias = ju.at("bias").get<double>();
    net.units.push_back(std::move(u));
  }
  return net;
}

void save_network(const ExpNetwork& net, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << network_to_json(net);
}

ExpNetwork load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return network_from_json(text);
}

}  // namespace swsynth
