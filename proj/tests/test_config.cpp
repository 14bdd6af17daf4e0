/*
 * Copyright 2026 The bathflux Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <thread>

#include "bathflux/config.hpp"
#include "bathflux/io.hpp"

using namespace bathflux;

namespace {

RunConfig parse(const std::string& text) { return parse_run_config(text); }

ScanResult small_scan(const ModelSpec& m) { return scan(m, uniform_grid(0.0, 2.0, 9)); }

}  // namespace

TEST(Config, EmptyObjectGivesDefaults) {
  const auto c = parse("{}");
  EXPECT_EQ(c.model.chain.family, ChainFamily::Pst);
  EXPECT_EQ(c.model.chain.n_sites, 6u);
  EXPECT_EQ(c.model.initial, InitialCase::TwoSite);
  EXPECT_EQ(c.model.bath.kind, SpectrumKind::Ohmic);
  EXPECT_EQ(c.model.mode, EvalMode::Full);
  EXPECT_EQ(c.model.jti_variant, JtiVariant::DerivativeConsistent);
  EXPECT_EQ(c.grid.n_points, 101u);
  EXPECT_FALSE(c.sweep.has_value());
  EXPECT_EQ(c.output.format, OutputFormat::Csv);
}

TEST(Config, FullDocument) {
  const auto c = parse(R"({
    "model": {"chain": {"family": "uniform", "n_sites": 40, "tau": 2.0}, "initial": "uniform_all",
              "bath": {"spectrum": "lorentz_drude", "frequency": 0.3, "uv_cutoff": 50, "ir_cutoff": null},
              "thermal": {"temperature": 4.0, "gamma_sq": 0.2}, "mode": "high_t", "jti_variant": "printed"},
    "grid": {"t_start": 1.0, "t_end": 5.0, "n_points": 11},
    "sweep": {"parameter": "model.chain.n_sites", "values": [5, 10]},
    "output": {"format": "json", "path": "x.json", "emit_svg": true}})");
  EXPECT_EQ(c.model.chain.family, ChainFamily::Uniform);
  EXPECT_DOUBLE_EQ(c.model.chain.couplings[0], 1.0);
  EXPECT_EQ(c.model.initial, InitialCase::UniformAll);
  EXPECT_EQ(c.model.bath.kind, SpectrumKind::LorentzDrude);
  EXPECT_EQ(*c.model.bath.uv_cutoff, 50.0);
  EXPECT_FALSE(c.model.bath.ir_cutoff.has_value());
  EXPECT_EQ(c.model.thermal.temperature, 4.0);
  EXPECT_EQ(c.model.mode, EvalMode::HighT);
  EXPECT_EQ(c.model.jti_variant, JtiVariant::AsPrinted);
  ASSERT_TRUE(c.sweep.has_value());
  EXPECT_EQ(c.sweep->values.size(), 2u);
  EXPECT_EQ(c.output.format, OutputFormat::Json);
  EXPECT_TRUE(c.output.emit_svg);
}

TEST(Config, CustomChain) {
  const auto c = parse(R"({"model": {"chain": {"family": "custom", "couplings": [1, 2, 3]}}})");
  EXPECT_EQ(c.model.chain.n_sites, 4u);
  EXPECT_THROW(parse(R"({"model": {"chain": {"family": "custom", "n_sites": 3, "couplings": [1, 2, 3]}}})"),
               InvalidInput);
  EXPECT_THROW(parse(R"({"model": {"chain": {"family": "custom"}}})"), InvalidInput);
  EXPECT_THROW(parse(R"({"model": {"chain": {"family": "pst", "couplings": [1]}}})"), InvalidInput);
}

TEST(Config, RejectsUnknownKeysEverywhere) {
  for (const char* doc : {R"({"modle": {}})", R"({"model": {"bth": {}}})", R"({"model": {"chain": {"size": 3}}})",
                          R"({"model": {"bath": {"cutoff": 3}}})", R"({"model": {"thermal": {"T": 1}}})",
                          R"({"grid": {"points": 3}})", R"({"output": {"svg": true}})",
                          R"({"sweep": {"parameter": "model.mode", "values": ["full"], "x": 1}})"})
    EXPECT_THROW(parse(doc), InvalidInput) << doc;
}

TEST(Config, RejectsBadValues) {
  for (const char* doc :
       {"not json", "[]", R"({"model": {"mode": "fast"}})", R"({"model": {"chain": {"n_sites": 1}}})",
        R"({"model": {"chain": {"n_sites": -3}}})", R"({"model": {"chain": {"n_sites": 2.5}}})",
        R"({"model": {"chain": {"tau": "1"}}})", R"({"model": {"bath": {"frequency": 0}}})",
        R"({"model": {"thermal": {"temperature": -1}}})", R"({"grid": {"t_start": 2, "t_end": 1}})",
        R"({"grid": {"n_points": 1}})", R"({"grid": {"t_start": -1}})", R"({"output": {"format": "xml"}})",
        R"({"output": {"emit_svg": 1}})", R"({"sweep": {"parameter": "model.chain.size", "values": [1]}})",
        R"({"sweep": {"parameter": "grid.n_points", "values": [1]}})",
        R"({"sweep": {"parameter": "model.chain", "values": [1]}})",
        R"({"sweep": {"parameter": "model.chain.n_sites", "values": []}})",
        R"({"sweep": {"parameter": "model.chain.n_sites", "values": [5, 1]}})"})
    EXPECT_THROW(parse(doc), InvalidInput) << doc;
}

TEST(Config, ResolvedEchoRoundTrips) {
  const auto c = parse(R"({"model": {"bath": {"spectrum": "white_noise", "frequency": 0.1, "ir_cutoff": 0.001}},
                           "grid": {"t_end": 3.3}})");
  const auto echo = run_config_to_json(c);
  const auto again = run_config_from_json(echo);
  EXPECT_EQ(run_config_to_json(again), echo);
  EXPECT_TRUE(echo["model"]["bath"]["uv_cutoff"].is_null());
  EXPECT_EQ(echo["model"]["thermal"]["gamma_sq"], 0.01);
}

TEST(Config, SweepApplication) {
  ModelSpec base;
  const auto m = apply_sweep_value(base, "model.chain.n_sites", 20);
  EXPECT_EQ(m.chain.n_sites, 20u);
  EXPECT_DOUBLE_EQ(m.chain.couplings[0], std::sqrt(19.0));
  EXPECT_EQ(apply_sweep_value(base, "model.bath.uv_cutoff", 7.5).bath.uv_cutoff.value(), 7.5);
  EXPECT_EQ(apply_sweep_value(base, "model.mode", "high_t").mode, EvalMode::HighT);
  EXPECT_THROW(apply_sweep_value(base, "model.bath.spectrum", "gaussian"), InvalidInput);
}

TEST(Format, ShortestRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(mant(rng), expo(rng));
    const auto s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
    EXPECT_NE(s.find('e'), std::string::npos);
  }
  EXPECT_EQ(format_double(0.0), "0e+00");
}

TEST(Csv, RoundTripAndDivergentToken) {
  ModelSpec m;
  m.bath = BathSpectrum::lorentz_drude(1.0);
  m.mode = EvalMode::HighT;
  const auto res = small_scan(m);
  RunHeader header{json{{"model", model_to_json(m)}}, "", {}};
  std::stringstream ss;
  write_csv(ss, header, res);
  const std::string text = ss.str();
  EXPECT_NE(text.find("t,j_t,j_ti,e_t,e_ti,flags\n"), std::string::npos);
  EXPECT_NE(text.find(",DIVERGENT,"), std::string::npos);
  EXPECT_EQ(text.find("generated"), std::string::npos);
  std::stringstream in(text);
  const auto col = read_csv_column(in, "j_t");
  ASSERT_EQ(col.t.size(), res.samples.size());
  for (std::size_t i = 0; i < col.t.size(); ++i) {
    EXPECT_EQ(col.t[i], res.samples[i].t);
    EXPECT_EQ(col.v[i], res.samples[i].j_t.value());
  }
  std::stringstream in2(text);
  EXPECT_THROW(read_csv_column(in2, "j_ti"), NumericalError);
  std::stringstream in3(text);
  EXPECT_THROW(read_csv_column(in3, "nope"), InvalidInput);
}

TEST(Csv, MalformedInput) {
  std::stringstream a("# only comments\n");
  EXPECT_THROW(read_csv_column(a, "j_t"), InvalidInput);
  std::stringstream b("t,j_t\n1.0,abc\n");
  EXPECT_THROW(read_csv_column(b, "j_t"), InvalidInput);
  std::stringstream c("t,j_t\n1.0\n");
  EXPECT_THROW(read_csv_column(c, "j_t"), InvalidInput);
}

TEST(Csv, DeterministicBytes) {
  ModelSpec m;
  const auto c = parse("{}");
  RunHeader header{run_config_to_json(c), "", {}};
  std::stringstream a, b;
  write_csv(a, header, small_scan(m));
  write_csv(b, header, small_scan(m));
  EXPECT_EQ(a.str(), b.str());
  header.timestamp = "2026-01-01T00:00:00Z";
  std::stringstream d;
  write_csv(d, header, small_scan(m));
  EXPECT_NE(d.str().find("# generated: 2026-01-01T00:00:00Z\n"), std::string::npos);
}

TEST(Json, OutputDocument) {
  ModelSpec m;
  m.initial = InitialCase::Site1;
  RunHeader header{json{{"model", model_to_json(m)}}, "", {{"note", "x"}}};
  std::stringstream ss;
  write_json(ss, header, small_scan(m));
  const auto doc = json::parse(ss.str());
  EXPECT_EQ(doc["rows"].size(), 9u);
  EXPECT_EQ(doc["columns"][0], "t");
  EXPECT_EQ(doc["rows"][3][1], 0.0);
  EXPECT_EQ(doc["metadata"]["note"], "x");
  EXPECT_EQ(doc["config"]["model"]["initial"], "site1");
}

TEST(Svg, Minimal) {
  std::stringstream ss;
  write_svg(ss, small_scan(ModelSpec{}));
  const auto s = ss.str();
  EXPECT_EQ(s.rfind("<svg", 0), 0u);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_EQ(std::count(s.begin(), s.end(), '\n') > 3, true);
}

TEST(Concurrency, ParallelScansMatchSequential) {
  std::vector<ModelSpec> models;
  for (std::size_t n : {5u, 10u, 20u, 40u}) {
    ModelSpec m;
    m.chain = make_chain(ChainFamily::Pst, n, 1.0);
    models.push_back(m);
  }
  std::vector<ScanResult> sequential, parallel(models.size());
  for (const auto& m : models) sequential.push_back(small_scan(m));
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < models.size(); ++i) pool.emplace_back([&, i] { parallel[i] = small_scan(models[i]); });
  for (auto& t : pool) t.join();
  for (std::size_t i = 0; i < models.size(); ++i)
    for (std::size_t k = 0; k < sequential[i].samples.size(); ++k) {
      EXPECT_EQ(parallel[i].samples[k].j_t.value(), sequential[i].samples[k].j_t.value());
      EXPECT_EQ(parallel[i].samples[k].e_ti.value(), sequential[i].samples[k].e_ti.value());
    }
}
