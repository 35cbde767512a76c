package com.fixture.sm05_manifest_only;

import android.app.Activity;

public class StatusActivity extends Activity {
}
