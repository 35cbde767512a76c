package com.fixture.sm04_benign;

import android.app.Activity;

public class DetailActivity extends Activity {
}
