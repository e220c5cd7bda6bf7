#include <stdio.h>
#include <string.h>

#include "fermatball/fermatball.h"

static int failures = 0;

#define EXPECT(cond)                                              \
  do {                                                            \
    if (!(cond)) {                                                \
      fprintf(stderr, "%s:%d: expected %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static void arrangements(void) {
  fb_arrangement* arr = NULL;
  size_t rank = 0, count = 0;
  char path[1024];
  snprintf(path, sizeof path, "%s/p2-quadrilateral.arr", FERMATBALL_DATA_DIR);
  EXPECT(fb_arrangement_load(path, &arr) == FB_OK);
  EXPECT(fb_arrangement_rank(arr, &rank) == FB_OK && rank == 1);
  EXPECT(fb_arrangement_branch_count(arr, &count) == FB_OK && count == 6);

  fb_report* report = NULL;
  EXPECT(fb_namba_classify(arr, &report) == FB_OK);
  char* text = NULL;
  EXPECT(fb_report_render(report, FB_FORMAT_JSON, &text) == FB_OK);
  EXPECT(text != NULL && strstr(text, "\"group\": \"(Z/3)^5\"") != NULL);
  fb_string_free(text);
  fb_report_free(report);
  fb_arrangement_free(arr);

  EXPECT(fb_arrangement_builtin("dp5-ten-curves", &arr) == FB_OK);
  EXPECT(fb_arrangement_rank(arr, &rank) == FB_OK && rank == 5);
  EXPECT(fb_arrangement_branch_count(arr, &count) == FB_OK && count == 10);
  fb_arrangement_free(arr);

  EXPECT(fb_arrangement_parse("", &arr) == FB_ERR_PARSE);
  EXPECT(arr == NULL);
  EXPECT(strlen(fb_last_error()) > 0);
  EXPECT(fb_arrangement_parse("rank 1\ngram\n1\ncanonical -3\nbranch 1 weight zz\n", &arr) == FB_ERR_PARSE);
  EXPECT(strstr(fb_last_error(), "line 5") != NULL);
  EXPECT(fb_arrangement_load("/nonexistent.arr", &arr) == FB_ERR_INVALID_ARGUMENT);
  EXPECT(fb_arrangement_builtin("nothing", &arr) == FB_ERR_INVALID_ARGUMENT);
}

static void verify(void) {
  fb_report* report = NULL;
  size_t total = 0, passed = 0;
  EXPECT(fb_verify("namba", 1, &report) == FB_OK);
  EXPECT(fb_report_totals(report, &total, &passed) == FB_OK);
  EXPECT(total > 0 && total == passed);
  char* json = NULL;
  char* md = NULL;
  EXPECT(fb_report_render(report, FB_FORMAT_JSON, &json) == FB_OK);
  EXPECT(fb_report_render(report, FB_FORMAT_MARKDOWN, &md) == FB_OK);
  EXPECT(strstr(json, "\"id\": \"cover_group.p2\"") != NULL);
  EXPECT(strstr(md, "| cover_group.p2 |") != NULL);
  fb_string_free(json);
  fb_string_free(md);
  EXPECT(fb_report_render(report, (fb_format)7, &json) == FB_ERR_INVALID_ARGUMENT);
  EXPECT(json == NULL);
  fb_report_free(report);
  report = NULL;

  EXPECT(fb_verify("nonsense", 1, &report) == FB_ERR_INVALID_ARGUMENT);
  EXPECT(report == NULL);
  EXPECT(strstr(fb_last_error(), "nonsense") != NULL);
  EXPECT(fb_verify(NULL, 1, &report) == FB_ERR_INVALID_ARGUMENT);
  EXPECT(fb_verify("fano", 1, NULL) == FB_ERR_INVALID_ARGUMENT);
  EXPECT(fb_report_totals(NULL, &total, &passed) == FB_ERR_INVALID_ARGUMENT);
  fb_report_free(NULL);
  fb_arrangement_free(NULL);
}

static void queries(void) {
  fb_report* report = NULL;
  size_t total = 0, passed = 0;
  EXPECT(fb_lattice_member("1 0 0 0 1 0 0 0 1", &report) == FB_OK);
  fb_report_free(report);
  EXPECT(fb_lattice_member("1 0 0", &report) == FB_ERR_PARSE);

  EXPECT(fb_lattice_quotient(2, 0, 0, -1, &report) == FB_OK);
  EXPECT(fb_report_totals(report, &total, &passed) == FB_OK && total == passed);
  fb_report_free(report);
  EXPECT(fb_lattice_quotient(3, 0, 10, -1, &report) == FB_ERR_BUDGET);
  EXPECT(fb_lattice_quotient(3, 0, 0, 5, &report) == FB_OK);
  EXPECT(fb_report_totals(report, &total, &passed) == FB_OK && passed + 1 == total);
  fb_report_free(report);

  EXPECT(fb_dm_enumerate(12, &report) == FB_OK);
  char* text = NULL;
  EXPECT(fb_report_render(report, FB_FORMAT_JSON, &text) == FB_OK);
  EXPECT(strstr(text, "1/3,1/3,1/3,1/3,2/3") != NULL);
  fb_string_free(text);
  fb_report_free(report);
  EXPECT(fb_dm_enumerate(40, &report) == FB_ERR_INVALID_ARGUMENT);

  EXPECT(fb_dm_periods("1/3,1/3,1/3,1/3,2/3", "0,1,0.3+0.8I,-0.6+0.2I,0.5-0.7I", 8, 1, &report) == FB_OK);
  EXPECT(fb_report_totals(report, &total, &passed) == FB_OK && total == passed);
  fb_report_free(report);
  EXPECT(fb_dm_periods("1/2,1/2,1/2,1/2,1/2", "0,1,2,3,4", 8, 1, &report) == FB_ERR_DOMAIN);
  EXPECT(fb_dm_periods("1/3,1/3,1/3,1/3,2/3", "0,1,2,3", 8, 1, &report) == FB_ERR_PARSE);
  EXPECT(fb_lattice_search(0, 1, &report) == FB_ERR_INVALID_ARGUMENT);
}

int main(void) {
  EXPECT(strcmp(fb_version(), "0.1.0") == 0);
  EXPECT(strcmp(fb_status_name(FB_ERR_BUDGET), "budget exceeded") == 0);
  arrangements();
  verify();
  queries();
  if (failures) {
    fprintf(stderr, "%d failure(s)\n", failures);
    return 1;
  }
  printf("c api: all checks passed\n");
  return 0;
}
