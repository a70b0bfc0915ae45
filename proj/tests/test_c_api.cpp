#include <vector>
#include <string>

#include "doctest.h"
#include "wmctree/wmctree.h"

namespace {

struct Guard {
  wmct_instance* inst = nullptr;
  wmct_report* rep = nullptr;
  ~Guard() {
    wmct_instance_free(inst);
    wmct_report_free(rep);
  }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  wmct_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("c api round trip and solve") {
  const char* text =
      "wmctree 1 3 1\n"
      "e 0 1\n"
      "e 1 2\n"
      "w 0 5\nw 1 1\nw 2 7\n"
      "p 0 2\n";
  Guard g;
  REQUIRE(wmct_instance_parse(text, &g.inst) == WMCT_OK);
  CHECK(wmct_instance_n(g.inst) == 3);
  CHECK(wmct_instance_pairs(g.inst) == 1);
  CHECK(wmct_instance_leaves(g.inst) == 2);
  CHECK(wmct_instance_request_degree(g.inst) == 1);

  char* round = nullptr;
  REQUIRE(wmct_instance_serialize(g.inst, &round) == WMCT_OK);
  wmct_instance* again = nullptr;
  REQUIRE(wmct_instance_parse(round, &again) == WMCT_OK);
  char* round2 = nullptr;
  REQUIRE(wmct_instance_serialize(again, &round2) == WMCT_OK);
  CHECK(take(round) == take(round2));
  wmct_instance_free(again);

  wmct_solve_options opts{};
  opts.algo = "leaves";
  REQUIRE(wmct_solve(g.inst, &opts, &g.rep) == WMCT_OK);
  CHECK(std::string(wmct_report_answer(g.rep)) == "yes");
  REQUIRE(wmct_report_has_weight(g.rep));
  CHECK(wmct_report_weight(g.rep) == 1);
  REQUIRE(wmct_report_witness_size(g.rep) == 1);
  uint32_t w = 99;
  wmct_report_witness(g.rep, &w);
  CHECK(w == 1);
  CHECK(wmct_report_has_bound(g.rep));
  CHECK(wmct_report_within_bound(g.rep));

  char* json = nullptr;
  REQUIRE(wmct_report_to_json(g.rep, &json) == WMCT_OK);
  std::string j = take(json);
  CHECK(j.find("\"answer\"") != std::string::npos);
}

TEST_CASE("c api error codes") {
  wmct_instance* inst = nullptr;
  CHECK(wmct_instance_parse("not an instance", &inst) == WMCT_ERR_PARSE);
  CHECK(std::string(wmct_last_error()).find("line") != std::string::npos);
  CHECK(wmct_instance_parse(nullptr, &inst) == WMCT_ERR_INPUT);

  wmct_instance* gen = nullptr;
  CHECK(wmct_gen_random(0, 0, 10, 1, "uniform", &gen) == WMCT_ERR_GENERATION);
  CHECK(wmct_gen_random(5, 2, 10, 1, "blob", &gen) == WMCT_ERR_GENERATION);

  Guard g;
  REQUIRE(wmct_gen_random(6, 2, 10, 1, "uniform", &g.inst) == WMCT_OK);
  uint32_t bogus = 999;
  int ok = 0;
  CHECK(wmct_verify(g.inst, &bogus, 1, 0, 0, 0, 0, &ok, nullptr) ==
        WMCT_ERR_INPUT);
  wmct_solve_options opts{};
  opts.algo = "oracle";
  opts.trace_dot_path = "/tmp/should-not-happen.dot";
  wmct_report* rep = nullptr;
  CHECK(wmct_solve(g.inst, &opts, &rep) == WMCT_ERR_INPUT);
}

TEST_CASE("c api verify and budgets") {
  Guard g;
  REQUIRE(wmct_gen_random(8, 4, 10, 3, "uniform", &g.inst) == WMCT_OK);
  REQUIRE(wmct_instance_set_budgets(g.inst, 1, 100, 1, 8) == WMCT_OK);
  uint64_t bw = 0;
  int64_t bk = 0;
  CHECK(wmct_instance_budget_w(g.inst, &bw) == 1);
  CHECK(bw == 100);
  CHECK(wmct_instance_budget_k(g.inst, &bk) == 1);
  CHECK(bk == 8);

  wmct_solve_options opts{};
  opts.algo = "oracle";
  REQUIRE(wmct_solve(g.inst, &opts, &g.rep) == WMCT_OK);
  std::string answer = wmct_report_answer(g.rep);
  if (answer == "yes") {
    std::vector<uint32_t> witness(wmct_report_witness_size(g.rep));
    wmct_report_witness(g.rep, witness.data());
    int ok = 0;
    char* why = nullptr;
    REQUIRE(wmct_verify(g.inst, witness.data(), witness.size(), 0, 0, 0, 0,
                        &ok, &why) == WMCT_OK);
    CHECK(ok == 1);
    take(why);
    // an empty witness against live pairs names the first violated pair
    if (wmct_instance_pairs(g.inst) > 0) {
      REQUIRE(wmct_verify(g.inst, nullptr, 0, 0, 0, 0, 0, &ok, &why) ==
              WMCT_OK);
      CHECK(ok == 0);
      CHECK(take(why).find("uncut pair") != std::string::npos);
    }
  }
}

TEST_CASE("c api classify") {
  Guard g;
  REQUIRE(wmct_gen_dq_light(2, 4, 30, 11, &g.inst) == WMCT_OK);
  char* json = nullptr;
  REQUIRE(wmct_classify(g.inst, 2, 1, 4, &json) == WMCT_OK);
  std::string j = take(json);
  CHECK(j.find("\"dq_light\": true") != std::string::npos);
}
