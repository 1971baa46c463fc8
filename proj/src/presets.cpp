#include "tpk/presets.hpp"

namespace tpk {

namespace {

Rat frac(long num, long den) { return Rat(num, den); }

std::vector<NamedConfig> buildCatalog() {
  std::vector<NamedConfig> catalog;

  {
    NamedConfig c;
    c.name = "trivial";
    c.note = "identity symbol, every operator vanishes";
    c.config.presetName = c.name;
    catalog.push_back(std::move(c));
  }
  {
    NamedConfig c;
    c.name = "widom-1";
    c.note = "one factor on each side, the smallest nondegenerate case";
    c.config.params.betaPlus = {frac(2, 5)};
    c.config.params.alphaMinus = {frac(2, 5)};
    c.config.presetName = c.name;
    catalog.push_back(std::move(c));
  }
  {
    NamedConfig c;
    c.name = "widom-2";
    c.note = "two numerator factors against one pole";
    c.config.params.betaPlus = {frac(2, 5), frac(3, 10)};
    c.config.params.alphaMinus = {frac(7, 20)};
    c.config.presetName = c.name;
    catalog.push_back(std::move(c));
  }
  {
    NamedConfig c;
    c.name = "geometric";
    c.note = "single pole on each side, closed forms known for everything";
    c.config.params.alphaPlus = {frac(1, 2)};
    c.config.params.alphaMinus = {frac(1, 2)};
    c.config.presetName = c.name;
    catalog.push_back(std::move(c));
  }
  {
    NamedConfig c;
    c.name = "mixed";
    c.note = "poles and zeros on both sides";
    c.config.params.alphaPlus = {frac(3, 10)};
    c.config.params.betaPlus = {frac(1, 5)};
    c.config.params.alphaMinus = {frac(1, 4)};
    c.config.params.betaMinus = {frac(3, 20)};
    c.config.presetName = c.name;
    catalog.push_back(std::move(c));
  }
  {
    NamedConfig c;
    c.name = "exp";
    c.note = "pure exponential factors, float scalars only";
    c.config.params.gammaPlus = frac(1, 2);
    c.config.params.gammaMinus = frac(1, 2);
    c.config.presetName = c.name;
    catalog.push_back(std::move(c));
  }

  return catalog;
}

}  // namespace

const std::vector<NamedConfig>& presetCatalog() {
  static const std::vector<NamedConfig> catalog = buildCatalog();
  return catalog;
}

RunConfig presetConfig(const std::string& name) {
  for (const NamedConfig& c : presetCatalog())
    if (c.name == name) return c.config;
  std::string names;
  for (const NamedConfig& c : presetCatalog()) {
    if (!names.empty()) names += ", ";
    names += c.name;
  }
  throw ConfigError("unknown preset '" + name + "' (available: " + names +
                    ")");
}

}  // namespace tpk
