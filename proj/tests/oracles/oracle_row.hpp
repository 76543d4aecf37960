#pragma once

struct OracleRow {
    double args[4];
    double re;
    double im;
};
