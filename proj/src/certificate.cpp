#include "kissing/certificate.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace kissing {

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[48];
  auto res = std::to_chars(buf, buf + sizeof(buf), x,
                           std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

bool Certificate::all_pass() const {
  if (checks.empty()) return false;
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

void append_array(std::string& out, const std::vector<double>& v) {
  out += '[';
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_real(v[i]);
  }
  out += ']';
}

}  // namespace

std::string Certificate::to_json() const {
  std::string out;
  out += "{\"problem\":{\"n\":" + std::to_string(problem.n) +
         ",\"z\":" + format_real(problem.z) + "},";
  out += "\"polynomial\":{\"monomial\":";
  append_array(out, monomial);
  out += ",\"gegenbauer\":";
  append_array(out, gegenbauer);
  out += "},\"checks\":[";
  for (size_t i = 0; i < checks.size(); ++i) {
    if (i) out += ',';
    out += "{\"name\":\"" + checks[i].name + "\",\"status\":\"" +
           (checks[i].pass ? "pass" : "fail") +
           "\",\"margin\":" + format_real(checks[i].margin) + "}";
  }
  out += "],\"mu\":" + std::to_string(mu) + ",\"h\":[";
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) out += ',';
    out += "{\"m\":" + std::to_string(h[i].m) +
           ",\"value\":" + format_real(h[i].value) + ",\"method\":\"" +
           h[i].method + "\",\"kind\":\"" +
           (h[i].over_estimate ? "over-estimate" : "exact") + "\"}";
  }
  out += "],\"h_max\":" + format_real(h_max) +
         ",\"bound\":" + format_real(bound) + ",\"conclusion\":";
  if (conclusion.empty())
    out += "null";
  else
    out += "\"" + conclusion + "\"";
  out += "}";
  return out;
}

}  // namespace kissing
