#include "jcn/receipt.hpp"

#include <sstream>

namespace jcn {

namespace {

template <class T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out << ' ';
    out << xs[i];
  }
  return out.str();
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

int parse_int(const std::string& s) {
  Weight w = parse_decimal(s);
  if (w > 1000000) throw InstanceError("receipt: integer out of range '" + s + "'");
  return static_cast<int>(w);
}

}  // namespace

bool ReductionReceipt::has_stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s == name) return true;
  }
  return false;
}

Weight ReductionReceipt::gadget_floor() const {
  Weight sum = 0;
  for (std::size_t i = 0; i < t_list.size() && i < g_list.size(); ++i) sum += t_list[i] * g_list[i];
  return sum;
}

Weight ReductionReceipt::anchor_weight() const {
  Weight sum = 0;
  for (const auto& w : w_list) sum += w;
  return sum;
}

std::string serialize_receipt(const ReductionReceipt& r) {
  std::ostringstream out;
  out << "stages = " << join(r.stages) << '\n';
  if (r.k) {
    out << "k = " << *r.k << '\n';
    out << "T = " << r.T << '\n';
    out << "w_list = " << join(r.w_list) << '\n';
    out << "crgj = " << r.crgj << '\n';
    for (const auto& [a, b] : r.alpha) out << "alpha." << a << " = " << b << '\n';
    for (const auto& [a, b] : r.beta) out << "beta." << a << " = " << b << '\n';
  }
  if (r.h) {
    out << "h = " << *r.h << '\n';
    out << "m = " << r.m << '\n';
    out << "p = " << r.p << '\n';
    out << "t = " << r.t << '\n';
    out << "t_list = " << join(r.t_list) << '\n';
    out << "g_list = " << join(r.g_list) << '\n';
    out << "dummy_anchors = " << r.dummy_anchors << '\n';
  }
  if (r.has_stage("three_connectify")) {
    out << "scale = " << r.scale << '\n';
    out << "wheel_weight = " << r.wheel_weight << '\n';
  }
  if (r.has_stage("expand_weights")) {
    out << "subdivided = " << (r.subdivided ? 1 : 0) << '\n';
    for (const auto& [e, copies] : r.bunches) out << "bunch." << e << " = " << join(copies) << '\n';
  }
  return out.str();
}

ReductionReceipt parse_receipt(const std::string& text) {
  ReductionReceipt r;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto eq = line.find(" = ");
    std::string key, value;
    if (eq == std::string::npos) {
      auto bare = line.find(" =");
      if (bare == std::string::npos || line.find_first_not_of(" \t\r", bare + 2) != std::string::npos) {
        throw InstanceError("receipt line " + std::to_string(lineno) + ": expected 'param = value'");
      }
      key = line.substr(0, bare);
    } else {
      key = line.substr(0, eq);
      value = line.substr(eq + 3);
    }
    while (!value.empty() && (value.back() == '\r' || value.back() == ' ')) value.pop_back();
    auto words = split_words(value);
    auto one = [&]() -> const std::string& {
      if (words.size() != 1) throw InstanceError("receipt line " + std::to_string(lineno) + ": expected one value");
      return words[0];
    };
    if (key == "stages") {
      r.stages = words;
    } else if (key == "k") {
      r.k = parse_int(one());
    } else if (key == "T") {
      r.T = parse_decimal(one());
    } else if (key == "w_list") {
      for (const auto& w : words) r.w_list.push_back(parse_decimal(w));
    } else if (key == "crgj") {
      r.crgj = parse_decimal(one());
    } else if (key.rfind("alpha.", 0) == 0) {
      r.alpha[key.substr(6)] = one();
    } else if (key.rfind("beta.", 0) == 0) {
      r.beta[key.substr(5)] = one();
    } else if (key == "h") {
      r.h = parse_int(one());
    } else if (key == "m") {
      r.m = parse_decimal(one());
    } else if (key == "p") {
      r.p = parse_decimal(one());
    } else if (key == "t") {
      r.t = parse_decimal(one());
    } else if (key == "t_list") {
      for (const auto& w : words) r.t_list.push_back(parse_decimal(w));
    } else if (key == "g_list") {
      for (const auto& w : words) r.g_list.push_back(parse_int(w));
    } else if (key == "dummy_anchors") {
      r.dummy_anchors = parse_int(one());
    } else if (key == "scale") {
      r.scale = parse_decimal(one());
    } else if (key == "wheel_weight") {
      r.wheel_weight = parse_decimal(one());
    } else if (key == "subdivided") {
      r.subdivided = one() == "1";
    } else if (key.rfind("bunch.", 0) == 0) {
      r.bunches[key.substr(6)] = words;
    } else {
      throw InstanceError("receipt line " + std::to_string(lineno) + ": unknown parameter '" + key + "'");
    }
  }
  return r;
}

Weight recover_s(const Weight& r, const ReductionReceipt& receipt) {
  Weight floor_value = receipt.gadget_floor();
  if (r < floor_value) {
    throw InstanceError("claimed value " + to_decimal(r) + " is below the gadget floor " + to_decimal(floor_value));
  }
  if (receipt.p == 0) throw InstanceError("receipt has no surface stage");
  return (r - floor_value) / (receipt.p * receipt.p);
}

Weight surface_upper_bound(const Weight& s, const ReductionReceipt& receipt) {
  Weight p2 = receipt.p * receipt.p;
  return s * p2 + receipt.gadget_floor() + p2 / 2;
}

Weight anchored_target(const Weight& s, const ReductionReceipt& receipt) {
  return receipt.crgj + receipt.anchor_weight() * receipt.T * receipt.T + s;
}

Weight recover_anchored(const Weight& r, const ReductionReceipt& receipt) {
  return r - receipt.anchor_weight() * receipt.T * receipt.T - receipt.crgj;
}

Weight forward_chain(const Weight& s, const ReductionReceipt& receipt) {
  Weight v = s;
  for (const auto& stage : receipt.stages) {
    if (stage == "anchored_to_fa6") {
      v = anchored_target(v, receipt);
    } else if (stage == "fa_to_surface") {
      v = surface_upper_bound(v, receipt);
    } else if (stage == "three_connectify") {
      v *= receipt.scale;
    }
  }
  return v;
}

Weight recover_chain(const Weight& r, const ReductionReceipt& receipt) {
  Weight v = r;
  for (auto it = receipt.stages.rbegin(); it != receipt.stages.rend(); ++it) {
    if (*it == "three_connectify") {
      v /= receipt.scale;
    } else if (*it == "fa_to_surface") {
      v = recover_s(v, receipt);
    } else if (*it == "anchored_to_fa6") {
      v = recover_anchored(v, receipt);
    }
  }
  return v;
}

}  // namespace jcn
