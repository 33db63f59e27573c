#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "wdf/errors.hpp"
#include "wdf/oracle/net.hpp"

namespace wdf::oracle {

namespace {

struct KindName {
  BranchKind kind;
  const char* token;
};

constexpr KindName kKinds[] = {
    {BranchKind::Resistor, "R"},      {BranchKind::Capacitor, "C"},
    {BranchKind::Inductor, "L"},      {BranchKind::VoltageSource, "V"},
    {BranchKind::CurrentSource, "I"}, {BranchKind::Diode, "D"},
    {BranchKind::DiodePair, "DP"},
};

std::string format(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_number(const std::string& token, int line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size())
    throw ParameterError("net line " + std::to_string(line) + ": bad number '" + token + "'");
  return v;
}

}  // namespace

void write_net(std::ostream& out, const NetDescription& net) {
  for (const Branch& br : net.branches) {
    const char* token = "?";
    for (const auto& k : kKinds)
      if (k.kind == br.kind) token = k.token;
    out << token << ' ' << br.a << ' ' << br.b << ' ';
    if (br.driven && br.value == 1.0)
      out << "in";
    else if (br.driven)
      out << "in*" << format(br.value);
    else
      out << format(br.value);
    if (br.kind == BranchKind::Diode || br.kind == BranchKind::DiodePair)
      out << " vt=" << format(br.diode.thermal_voltage) << " n=" << format(br.diode.ideality);
    out << '\n';
  }
}

NetDescription read_net(std::istream& in) {
  NetDescription net;
  std::string text;
  int line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (const auto hash = text.find('#'); hash != std::string::npos) text.erase(hash);
    std::istringstream fields(text);
    std::string kind_token, value_token;
    int a = 0, b = 0;
    if (!(fields >> kind_token)) continue;
    if (!(fields >> a >> b >> value_token))
      throw ParameterError("net line " + std::to_string(line) + ": expected 'kind a b value'");

    const KindName* kind = nullptr;
    for (const auto& k : kKinds)
      if (kind_token == k.token) kind = &k;
    if (kind == nullptr)
      throw ParameterError("net line " + std::to_string(line) + ": unknown kind '" + kind_token + "'");
    if (a < 0 || b < 0) throw ParameterError("net line " + std::to_string(line) + ": negative node");

    bool driven = false;
    double value = 1.0;
    if (value_token == "in") {
      driven = true;
    } else if (value_token.rfind("in*", 0) == 0) {
      driven = true;
      value = parse_number(value_token.substr(3), line);
    } else {
      value = parse_number(value_token, line);
    }
    net.add(kind->kind, a, b, value, driven);

    Branch& br = net.branches.back();
    if (br.kind == BranchKind::Diode || br.kind == BranchKind::DiodePair) {
      br.diode.saturation_current = value;
      std::string opt;
      while (fields >> opt) {
        if (opt.rfind("vt=", 0) == 0)
          br.diode.thermal_voltage = parse_number(opt.substr(3), line);
        else if (opt.rfind("n=", 0) == 0)
          br.diode.ideality = parse_number(opt.substr(2), line);
        else
          throw ParameterError("net line " + std::to_string(line) + ": unknown option '" + opt + "'");
      }
    }
  }
  return net;
}

}  // namespace wdf::oracle
