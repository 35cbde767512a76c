package com.fixture.sm11_vulnerable;

import android.app.Activity;
import android.app.PendingIntent;
import android.content.Intent;

public class AlarmActivity extends Activity {
    PendingIntent alarm() {
        return PendingIntent.getBroadcast(this, 0, new Intent("com.fixture.action.ALARM"), 0);
    }

    PendingIntent open() {
        Intent open = new Intent(Intent.ACTION_VIEW);
        open.addFlags(Intent.FLAG_ACTIVITY_NEW_TASK);
        return PendingIntent.getActivity(this, 1, open, PendingIntent.FLAG_IMMUTABLE);
    }

    PendingIntent many() {
        Intent[] intents = { new Intent("a"), new Intent("b") };
        return PendingIntent.getActivities(this, 2, intents, 0);
    }
}
