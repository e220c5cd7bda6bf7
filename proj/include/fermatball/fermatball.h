#ifndef FERMATBALL_H
#define FERMATBALL_H

#include <stddef.h>

#if defined(_WIN32)
#define FB_API __declspec(dllexport)
#else
#define FB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct fb_report fb_report;
typedef struct fb_arrangement fb_arrangement;

typedef enum fb_status {
  FB_OK = 0,
  FB_ERR_INVALID_ARGUMENT = 1,
  FB_ERR_PARSE = 2,
  FB_ERR_DOMAIN = 3,
  FB_ERR_BUDGET = 4,
  FB_ERR_NUMERICAL = 5,
  FB_ERR_INTERNAL = 6
} fb_status;

typedef enum fb_format { FB_FORMAT_JSON = 0, FB_FORMAT_MARKDOWN = 1 } fb_format;

FB_API const char* fb_version(void);
/* Message of the last failed call on this thread; empty when none. */
FB_API const char* fb_last_error(void);
FB_API const char* fb_status_name(fb_status status);

/* suite: fano, chern, namba, lattice, dm or all. */
FB_API fb_status fb_verify(const char* suite, unsigned workers, fb_report** out);

FB_API fb_status fb_arrangement_load(const char* path, fb_arrangement** out);
FB_API fb_status fb_arrangement_parse(const char* text, fb_arrangement** out);
FB_API fb_status fb_arrangement_builtin(const char* name, fb_arrangement** out);
FB_API fb_status fb_arrangement_rank(const fb_arrangement* arr, size_t* out);
FB_API fb_status fb_arrangement_branch_count(const fb_arrangement* arr, size_t* out);
FB_API void fb_arrangement_free(fb_arrangement* arr);

FB_API fb_status fb_namba_classify(const fb_arrangement* arr, fb_report** out);
FB_API fb_status fb_lattice_search(long height, unsigned workers, fb_report** out);
/* budget 0 selects the default; compare_rank < 0 skips the rank check. */
FB_API fb_status fb_lattice_quotient(unsigned level, int with_diagonal, size_t budget, int compare_rank,
                                    fb_report** out);
/* matrix: nine "a+bw" tokens, row-major. */
FB_API fb_status fb_lattice_member(const char* matrix, fb_report** out);
FB_API fb_status fb_dm_enumerate(int max_denominator, fb_report** out);
/* mu: "p/q,...", points: five "re+imI" literals separated by commas. */
FB_API fb_status fb_dm_periods(const char* mu, const char* points, int samples, unsigned long seed, fb_report** out);

FB_API fb_status fb_report_totals(const fb_report* report, size_t* total, size_t* passed);
/* The returned string is owned by the caller; release with fb_string_free. */
FB_API fb_status fb_report_render(const fb_report* report, fb_format format, char** out);
FB_API void fb_report_free(fb_report* report);
FB_API void fb_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
