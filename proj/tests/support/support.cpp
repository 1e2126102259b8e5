#include "support.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "atld/model_io.hpp"

namespace support {

std::string fixture_path(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name + ".json";
}

atld::Model fixture(const std::string& name) {
  atld::Model m = atld::load_model_file(fixture_path(name));
  auto vr = atld::validate(m);
  if (!vr.ok)
    throw std::runtime_error("fixture '" + name + "': " + vr.violations.front());
  return m;
}

atld::Model random_model(std::mt19937& rng, const ModelShape& shape) {
  atld::Model m;
  for (int i = 0; i < shape.agents; ++i) m.agents.push_back("a" + std::to_string(i));
  for (int i = 0; i < shape.actions; ++i) m.actions.push_back("act" + std::to_string(i));
  for (int i = 0; i < shape.props; ++i) m.propositions.push_back("p" + std::to_string(i));
  for (int i = 0; i < shape.states; ++i) m.states.push_back("s" + std::to_string(i));
  m.init_shape();

  auto pick = [&](int n) { return (int)(rng() % n); };

  for (int p = 0; p < shape.props; ++p)
    for (int v = 0; v < shape.states; ++v)
      if (rng() & 1) m.labelling[p].insert(v);

  if (shape.with_obs) {
    for (int a = 0; a < shape.agents; ++a) {
      int nblocks = 1 + pick(shape.states);
      std::vector<int> block(shape.states);
      for (int v = 0; v < shape.states; ++v) block[v] = pick(nblocks);
      std::vector<int> first(nblocks, -1);
      for (int v = 0; v < shape.states; ++v) {
        if (first[block[v]] < 0) first[block[v]] = v;
        m.obs[a][v] = first[block[v]];
      }
      // availability uniform per block
      std::vector<uint64_t> per_block(nblocks, 0);
      for (int b = 0; b < nblocks; ++b)
        per_block[b] = 1 + (rng() % ((1u << shape.actions) - 1));
      for (int v = 0; v < shape.states; ++v) m.avail[a][v] = per_block[block[v]];
    }
  } else {
    for (int a = 0; a < shape.agents; ++a)
      for (int v = 0; v < shape.states; ++v)
        m.avail[a][v] = 1 + (rng() % ((1u << shape.actions) - 1));
  }

  for (int v = 0; v < shape.states; ++v)
    for (long p = 0; p < m.profile_count; ++p)
      m.trans[v * m.profile_count + p] = pick(shape.states);
  return m;
}

namespace {

atld::FormulaPtr random_bool(std::mt19937& rng, const atld::Model& m, int depth) {
  if (depth == 0 || rng() % 3 == 0) {
    switch (rng() % 4) {
      case 0: return atld::f_true();
      case 1: return atld::f_prop(m.propositions[rng() % m.propositions.size()]);
      case 2: return atld::f_not(atld::f_prop(m.propositions[rng() % m.propositions.size()]));
      default:
        return atld::f_has(m.agents[rng() % m.agents.size()],
                           m.actions[rng() % m.actions.size()]);
    }
  }
  auto a = random_bool(rng, m, depth - 1);
  auto b = random_bool(rng, m, depth - 1);
  switch (rng() % 3) {
    case 0: return atld::f_and(a, b);
    case 1: return atld::f_or(a, b);
    default: return atld::f_implies(a, b);
  }
}

std::vector<std::string> random_agent_set(std::mt19937& rng, const atld::Model& m,
                                          bool allow_empty) {
  std::vector<std::string> out;
  for (const auto& a : m.agents)
    if (rng() & 1) out.push_back(a);
  if (out.empty() && !allow_empty) out.push_back(m.agents[rng() % m.agents.size()]);
  return out;
}

}  // namespace

atld::FormulaPtr random_formula(std::mt19937& rng, const atld::Model& m,
                                const FormulaShape& shape) {
  if (shape.depth == 0) return random_bool(rng, m, 1);
  FormulaShape sub = shape;
  sub.depth = shape.depth - 1;
  int n = 7 + (shape.allow_update ? 2 : 0) + (shape.allow_knows ? 2 : 0);
  int k = (int)(rng() % n);
  switch (k) {
    case 0: return atld::f_not(random_formula(rng, m, sub));
    case 1: return atld::f_and(random_formula(rng, m, sub), random_formula(rng, m, sub));
    case 2: return atld::f_or(random_formula(rng, m, sub), random_formula(rng, m, sub));
    case 3: return atld::f_implies(random_formula(rng, m, sub), random_formula(rng, m, sub));
    case 4:
      return atld::f_next(random_agent_set(rng, m, true), random_formula(rng, m, sub));
    case 5:
      return atld::f_until(random_agent_set(rng, m, true), random_formula(rng, m, sub),
                           random_formula(rng, m, sub));
    case 6:
      return atld::f_release(random_agent_set(rng, m, true), random_formula(rng, m, sub),
                             random_formula(rng, m, sub));
    default: break;
  }
  if (shape.allow_knows && k >= n - 2)
    return atld::f_knows(m.agents[rng() % m.agents.size()],
                         random_formula(rng, m, sub));
  atld::UpdateSpec spec;
  spec.sign = rng() & 1 ? atld::Sign::Grant : atld::Sign::Remove;
  int items = 1 + (int)(rng() % 2);
  for (int i = 0; i < items; ++i) {
    atld::UpdateItem item;
    item.precondition = random_bool(rng, m, 2);
    item.action = m.actions[rng() % m.actions.size()];
    item.targets = random_agent_set(rng, m, false);
    if (shape.allow_knows && (rng() & 1))
      item.informed = random_agent_set(rng, m, true);
    spec.items.push_back(item);
  }
  return atld::f_update(spec, random_formula(rng, m, sub));
}

CliResult run_cli(const std::vector<std::string>& args) {
  std::string cmd = CLI_BIN;
  for (const auto& a : args) cmd += " '" + a + "'";
  cmd += " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
    res.out.append(buf.data(), n);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string temp_dir() {
  static int counter = 0;
  auto dir = std::filesystem::temp_directory_path() /
             ("atld-test-" + std::to_string(getpid()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir.string();
}

}  // namespace support
